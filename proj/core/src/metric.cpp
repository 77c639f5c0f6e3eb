#include "embrecon/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "embrecon/rng.hpp"

namespace embrecon {

namespace {

constexpr double kProbClampEps = 1e-7;

double clamp01(double x, double lo, double hi) {
  return std::min(std::max(x, lo), hi);
}

std::vector<int> topk_select(const Eigen::VectorXd& scores, int k, int skip) {
  const int n = static_cast<int>(scores.size());
  std::vector<int> idx;
  idx.reserve(n);
  for (int j = 0; j < n; ++j) {
    if (j != skip) idx.push_back(j);
  }
  const int take = std::min<int>(k, static_cast<int>(idx.size()));
  std::partial_sort(idx.begin(), idx.begin() + take, idx.end(),
                    [&](int a, int b) {
                      if (scores(a) != scores(b)) return scores(a) > scores(b);
                      return a < b;
                    });
  idx.resize(take);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<int> gumbel_topk_row_impl(const Eigen::VectorXd& probs, int k,
                                      Rng& rng, int skip_index) {
  const int n = static_cast<int>(probs.size());
  Eigen::VectorXd scores(n);
  for (int j = 0; j < n; ++j) {
    const double logp =
        probs(j) > 0.0 ? std::log(probs(j)) : -std::numeric_limits<double>::infinity();
    scores(j) = logp + rng.gumbel();
  }
  return topk_select(scores, k, skip_index);
}

}  // namespace

MetricHeads MetricHeads::ones(int heads, int dim) {
  if (heads < 1 || dim < 1) throw std::invalid_argument("MetricHeads: bad shape");
  MetricHeads m;
  m.weights = Eigen::MatrixXd::Ones(heads, dim);
  return m;
}

double cosine_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine_distance: size mismatch");
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("cosine_distance: zero vector");
  }
  return clamp01(1.0 - a.dot(b) / (na * nb), 0.0, 2.0);
}

double multihead_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                          const MetricHeads& heads) {
  if (a.size() != b.size() || heads.dim() != a.size()) {
    throw std::invalid_argument("multihead_distance: size mismatch");
  }
  const int m = heads.head_count();
  double cos_sum = 0.0;
  for (int i = 0; i < m; ++i) {
    const Eigen::ArrayXd w = heads.weights.row(i).transpose().array();
    const Eigen::VectorXd x = (w * a.array()).matrix();
    const Eigen::VectorXd y = (w * b.array()).matrix();
    const double nx = x.norm(), ny = y.norm();
    if (nx == 0.0 || ny == 0.0) continue;  // vanished head contributes cos = 0
    cos_sum += x.dot(y) / (nx * ny);
  }
  return clamp01(1.0 - cos_sum / m, 0.0, 2.0);
}

EdgeProbabilityMatrix edge_probabilities(const EmbeddingMatrix& h,
                                         const MetricHeads& heads, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("edge_probabilities: tau must be > 0");
  if (heads.dim() != h.dim()) {
    throw std::invalid_argument("edge_probabilities: head dimension mismatch");
  }
  const int n = h.node_count();
  const int m = heads.head_count();
  Eigen::MatrixXd cos_mean = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd x = h.rows.array().rowwise() * heads.weights.row(i).array();
    for (int v = 0; v < n; ++v) {
      const double norm = x.row(v).norm();
      if (norm > 0.0) {
        x.row(v) /= norm;
      } else {
        x.row(v).setZero();  // vanished head: cos contribution 0
      }
    }
    cos_mean.noalias() += x * x.transpose();
  }
  cos_mean /= m;
  EdgeProbabilityMatrix out;
  out.tau = tau;
  out.p = (-tau * (1.0 - cos_mean.array())).exp();
  out.p.diagonal().setZero();
  return out;
}

std::vector<int> gumbel_topk_row(const Eigen::VectorXd& probs, int k,
                                 std::uint64_t seed, int skip_index) {
  if (k < 1) throw std::invalid_argument("gumbel_topk_row: k must be >= 1");
  Rng rng(seed);
  return gumbel_topk_row_impl(probs, k, rng, skip_index);
}

Graph gumbel_topk_graph(const EdgeProbabilityMatrix& p, int k,
                        std::uint64_t seed) {
  const int n = p.node_count();
  if (k < 1 || k >= n) {
    throw std::invalid_argument("gumbel_topk_graph: need 1 <= k < n");
  }
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * k);
  for (int v = 0; v < n; ++v) {
    for (int u : gumbel_topk_row_impl(p.p.row(v), k, rng, v)) {
      edges.emplace_back(v, u);
    }
  }
  return Graph::from_edges(n, edges);
}

namespace {

struct BceEval {
  double loss = 0.0;
  Eigen::MatrixXd grad;  // empty unless requested
};

BceEval metric_bce_eval(const MetricHeads& heads, const Eigen::MatrixXd& h,
                        const PairBatch& batch, double tau, bool want_grad) {
  if (batch.pairs.size() != batch.labels.size()) {
    throw std::invalid_argument("metric bce: pairs/labels size mismatch");
  }
  if (batch.pairs.empty()) throw std::invalid_argument("metric bce: empty batch");
  const int m = heads.head_count();
  const int d = heads.dim();
  const std::size_t count = batch.pairs.size();

  // per-head reweighted rows and their norms
  std::vector<Eigen::MatrixXd> xw(m);
  std::vector<Eigen::VectorXd> norms(m);
  for (int i = 0; i < m; ++i) {
    xw[i] = h.array().rowwise() * heads.weights.row(i).array();
    norms[i] = xw[i].rowwise().norm();
  }

  Eigen::MatrixXd cos(count, m);
  for (int i = 0; i < m; ++i) {
    for (std::size_t pi = 0; pi < count; ++pi) {
      const auto [v, u] = batch.pairs[pi];
      const double nv = norms[i](v), nu = norms[i](u);
      cos(pi, i) = (nv > 0.0 && nu > 0.0)
                       ? xw[i].row(v).dot(xw[i].row(u)) / (nv * nu)
                       : 0.0;
    }
  }

  BceEval ev;
  if (want_grad) ev.grad = Eigen::MatrixXd::Zero(m, d);
  Eigen::VectorXd dphi(count);
  for (std::size_t pi = 0; pi < count; ++pi) {
    const double phi = 1.0 - cos.row(pi).mean();
    const double p = std::exp(-tau * phi);
    const double pc = clamp01(p, kProbClampEps, 1.0 - kProbClampEps);
    const double z = batch.labels[pi];
    ev.loss += -(z * std::log(pc) + (1.0 - z) * std::log(1.0 - pc));
    const bool in_range = p > kProbClampEps && p < 1.0 - kProbClampEps;
    dphi(pi) = in_range ? tau * (z - (1.0 - z) * pc / (1.0 - pc)) : 0.0;
  }
  ev.loss /= static_cast<double>(count);
  if (!want_grad) return ev;

  for (int i = 0; i < m; ++i) {
    const auto w = heads.weights.row(i).array();
    for (std::size_t pi = 0; pi < count; ++pi) {
      if (dphi(pi) == 0.0) continue;
      const auto [v, u] = batch.pairs[pi];
      const double nv = norms[i](v), nu = norms[i](u);
      if (nv == 0.0 || nu == 0.0) continue;
      const auto hv = h.row(v).array(), hu = h.row(u).array();
      const double c = cos(pi, i);
      // d cos / d w_t through the reweighted inner product and both norms
      const Eigen::ArrayXd dc =
          w * (2.0 * hv * hu / (nv * nu) -
               c * (hv.square() / (nv * nv) + hu.square() / (nu * nu)));
      const double coeff = dphi(pi) * (-1.0 / m) / static_cast<double>(count);
      ev.grad.row(i) += (coeff * dc).matrix().transpose();
    }
  }
  return ev;
}

}  // namespace

double metric_bce_loss(const MetricHeads& heads, const Eigen::MatrixXd& h,
                       const PairBatch& batch, double tau) {
  return metric_bce_eval(heads, h, batch, tau, false).loss;
}

Eigen::MatrixXd metric_bce_gradient(const MetricHeads& heads,
                                    const Eigen::MatrixXd& h,
                                    const PairBatch& batch, double tau) {
  return metric_bce_eval(heads, h, batch, tau, true).grad;
}

FitResult fit_metric(const MetricHeads& heads, const EmbeddingMatrix& h,
                     const Graph& supervision, const FitConfig& cfg,
                     std::uint64_t seed) {
  if (supervision.edge_count() == 0) {
    throw std::invalid_argument("fit_metric: supervision graph has no edges");
  }
  if (cfg.steps < 0 || !(cfg.lr > 0.0) || cfg.neg_ratio < 0.0 || !(cfg.tau > 0.0)) {
    throw std::invalid_argument("fit_metric: bad config");
  }
  FitResult result{heads, {}};
  if (cfg.steps == 0) return result;

  const int n = supervision.node_count();
  PairBatch batch;
  batch.pairs = supervision.edges();
  batch.labels.assign(batch.pairs.size(), 1.0);

  const auto max_edges =
      static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  const bool has_non_edges = supervision.edge_count() < max_edges;
  const auto neg_count = static_cast<std::size_t>(
      std::llround(cfg.neg_ratio * static_cast<double>(supervision.edge_count())));
  Rng rng(seed);
  if (has_non_edges) {
    for (std::size_t i = 0; i < neg_count; ++i) {
      for (;;) {
        const int v = rng.uniform_int(n);
        const int u = rng.uniform_int(n);
        if (v == u || supervision.has_edge(v, u)) continue;
        batch.pairs.emplace_back(std::min(v, u), std::max(v, u));
        batch.labels.push_back(0.0);
        break;
      }
    }
  }

  BceEval ev = metric_bce_eval(result.heads, h.rows, batch, cfg.tau, true);
  for (int step = 0; step < cfg.steps; ++step) {
    if (!std::isfinite(ev.loss)) {
      throw std::runtime_error("fit_metric: non-finite loss at step " +
                               std::to_string(step));
    }
    double step_size = cfg.lr;
    for (int bt = 0; bt < 20; ++bt) {
      MetricHeads cand{result.heads.weights - step_size * ev.grad};
      const double cand_loss = metric_bce_loss(cand, h.rows, batch, cfg.tau);
      if (cand_loss <= ev.loss + 1e-12) {
        result.heads = std::move(cand);
        ev = metric_bce_eval(result.heads, h.rows, batch, cfg.tau, true);
        break;
      }
      step_size *= 0.5;
    }
    result.loss_trace.push_back(ev.loss);
  }
  return result;
}

}  // namespace embrecon
