#include "embrecon/attack.hpp"

#include <cmath>
#include <string>

#include "embrecon/rng.hpp"

namespace embrecon {

namespace {

enum SeedPurpose : std::uint64_t {
  kSeedGraph = 1,
  kThetaInit = 2,
  kMetricFit = 3,
  kResample = 4,
  kBinarize = 5,
};

void validate(const AttackConfig& cfg, const EmbeddingMatrix& h0) {
  const int n = h0.node_count();
  if (n < 2) throw std::invalid_argument("attack: need at least two nodes");
  if (cfg.k < 1 || cfg.k >= n) throw std::invalid_argument("attack: need 1 <= k < n");
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("attack: tau must be > 0");
  if (!(cfg.eta > 0.0) || cfg.eta > 1.0) {
    throw std::invalid_argument("attack: eta must be in (0, 1]");
  }
  if (cfg.heads < 1) throw std::invalid_argument("attack: need at least one head");
  if (cfg.iterations < 1) throw std::invalid_argument("attack: need T >= 1");
  if (!h0.rows.allFinite()) throw std::invalid_argument("attack: non-finite embedding");
}

GaeParams init_theta(const AttackConfig& cfg, int d) {
  const int d_latent = cfg.gae.latent_dim > 0 ? cfg.gae.latent_dim : d;
  if (cfg.gae.theta0) {
    if (cfg.gae.theta0->rows() != d || cfg.gae.theta0->cols() != d_latent) {
      throw std::invalid_argument("attack: theta0 shape mismatch");
    }
    return GaeParams{*cfg.gae.theta0};
  }
  return GaeParams::init(d, d_latent, mix_seed(cfg.seed, kThetaInit));
}

}  // namespace

Eigen::MatrixXd combine(const Eigen::MatrixXd& a0, const Eigen::MatrixXd& a_next,
                        double eta) {
  if (a0.rows() != a_next.rows() || a0.cols() != a_next.cols()) {
    throw std::invalid_argument("combine: shape mismatch");
  }
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::invalid_argument("combine: eta must be in (0, 1]");
  }
  return (1.0 - eta) * a0 + eta * a_next;
}

Eigen::MatrixXd clip_unit(const Eigen::MatrixXd& a) {
  return a.cwiseMax(0.0).cwiseMin(1.0);
}

Graph binarize_bernoulli(const Eigen::MatrixXd& a, std::uint64_t seed) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("binarize_bernoulli: not square");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    for (int u = v + 1; u < n; ++u) {
      const double p = a(v, u);
      if (p < 0.0 || p > 1.0 || !std::isfinite(p)) {
        throw std::invalid_argument("binarize_bernoulli: entry outside [0, 1]");
      }
      if (rng.uniform() < p) edges.emplace_back(v, u);
    }
  }
  return Graph::from_edges(n, edges);
}

AttackResult run_attack(const EmbeddingMatrix& h0, const AttackConfig& cfg) {
  validate(cfg, h0);
  const int n = h0.node_count();
  const int d = h0.dim();

  // seed graph: plain cosine probabilities (all-ones single head)
  const EdgeProbabilityMatrix p0 =
      edge_probabilities(h0, MetricHeads::ones(1, d), cfg.tau);
  const Graph seed_graph =
      gumbel_topk_graph(p0, cfg.k, mix_seed(cfg.seed, kSeedGraph));
  const Eigen::MatrixXd a0 = seed_graph.dense_adjacency();

  MetricHeads heads = MetricHeads::ones(cfg.heads, d);
  GaeParams params = init_theta(cfg, d);
  AdamState adam;

  FitConfig fit_cfg{cfg.metric.steps, cfg.metric.lr, cfg.metric.neg_ratio,
                    cfg.metric.tau};

  Graph current = seed_graph;
  EmbeddingMatrix latent = h0;
  AttackResult result;
  double best_loss = std::numeric_limits<double>::infinity();
  int stall = 0;

  for (int t = 0; t < cfg.iterations; ++t) {
    try {
      if (cfg.metric.steps > 0) {
        heads = fit_metric(heads, latent, current, fit_cfg,
                           mix_seed(cfg.seed, t, kMetricFit))
                    .heads;
      }
      const EdgeProbabilityMatrix p = edge_probabilities(latent, heads, cfg.tau);
      current = gumbel_topk_graph(p, cfg.k, mix_seed(cfg.seed, t, kResample));

      const Eigen::MatrixXd a_hat = normalize_adjacency(current);
      GaeEval ev = total_loss_and_gradients(
          a_hat, h0.rows, params, h0.rows, current.dense_adjacency(), cfg.alpha,
          cfg.beta, cfg.gae.weights, cfg.gae.recon_form);
      adam_step(params.theta, ev.grad_total, adam, cfg.gae.lr);

      const Eigen::MatrixXd merged =
          clip_unit(combine(a0, ev.weighted_adj, cfg.eta));
      current = binarize_bernoulli(merged, mix_seed(cfg.seed, t, kBinarize));
      latent.rows = std::move(ev.latent);
      latent.normalized = false;

      result.trace.iterations.push_back({t, ev.loss_laplacian, ev.loss_sparsity,
                                         ev.loss_reconstruction, ev.total,
                                         current.edge_count()});
      if (!std::isfinite(ev.total)) {
        throw std::runtime_error("non-finite total loss");
      }
      if (cfg.early_stop) {
        if (ev.total < best_loss - cfg.early_stop_tol) {
          best_loss = ev.total;
          stall = 0;
        } else if (++stall >= cfg.early_stop_patience) {
          break;
        }
      }
    } catch (const AttackError&) {
      throw;
    } catch (const std::exception& e) {
      throw AttackError("attack iteration " + std::to_string(t) + ": " + e.what(),
                        t, std::move(result.trace));
    }
  }
  result.graph = std::move(current);
  return result;
}

AttackResult run_attack_ablation_no_gml(const EmbeddingMatrix& h0,
                                        const AttackConfig& cfg) {
  validate(cfg, h0);
  const int d = h0.dim();

  const EdgeProbabilityMatrix p0 =
      edge_probabilities(h0, MetricHeads::ones(1, d), cfg.tau);
  const Graph seed_graph =
      gumbel_topk_graph(p0, cfg.k, mix_seed(cfg.seed, kSeedGraph));
  const Eigen::MatrixXd a0 = seed_graph.dense_adjacency();
  const Eigen::MatrixXd a_hat = normalize_adjacency(seed_graph);

  GaeParams params = init_theta(cfg, d);
  AdamState adam;
  AttackResult result;
  Eigen::MatrixXd weighted = a0;

  for (int t = 0; t < cfg.iterations; ++t) {
    try {
      GaeEval ev = total_loss_and_gradients(a_hat, h0.rows, params, h0.rows, a0,
                                            cfg.alpha, cfg.beta, cfg.gae.weights,
                                            cfg.gae.recon_form);
      adam_step(params.theta, ev.grad_total, adam, cfg.gae.lr);
      weighted = std::move(ev.weighted_adj);
      result.trace.iterations.push_back({t, ev.loss_laplacian, ev.loss_sparsity,
                                         ev.loss_reconstruction, ev.total,
                                         seed_graph.edge_count()});
      if (!std::isfinite(ev.total)) {
        throw std::runtime_error("non-finite total loss");
      }
    } catch (const AttackError&) {
      throw;
    } catch (const std::exception& e) {
      throw AttackError("ablation step " + std::to_string(t) + ": " + e.what(), t,
                        std::move(result.trace));
    }
  }
  const Eigen::MatrixXd merged = clip_unit(combine(a0, weighted, cfg.eta));
  result.graph = binarize_bernoulli(merged, mix_seed(cfg.seed, kBinarize));
  if (!result.trace.iterations.empty()) {
    result.trace.iterations.back().edges = result.graph.edge_count();
  }
  return result;
}

}  // namespace embrecon
