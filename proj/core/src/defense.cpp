#include "embrecon/defense.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "embrecon/eval.hpp"
#include "embrecon/rng.hpp"

namespace embrecon {

EmbeddingMatrix perturb_embeddings(const EmbeddingMatrix& h,
                                   const NoiseConfig& cfg) {
  if (!(cfg.b > 0.0)) throw std::invalid_argument("perturb_embeddings: b must be > 0");
  Rng rng(cfg.seed);
  EmbeddingMatrix out;
  out.rows = h.rows;
  for (int v = 0; v < h.node_count(); ++v) {
    for (int j = 0; j < h.dim(); ++j) {
      out.rows(v, j) += rng.laplace(cfg.mu, cfg.b);
    }
  }
  out.normalized = false;
  return out;
}

double link_prediction_precision(const EmbeddingMatrix& h, const Graph& truth) {
  const int n = h.node_count();
  if (truth.node_count() != n) {
    throw std::invalid_argument("link_prediction_precision: node count mismatch");
  }
  if (truth.edge_count() == 0) {
    throw std::invalid_argument("link_prediction_precision: truth graph has no edges");
  }
  Eigen::MatrixXd rows = h.rows;
  for (int v = 0; v < n; ++v) {
    const double norm = rows.row(v).norm();
    if (norm == 0.0) {
      throw std::invalid_argument("link_prediction_precision: zero row at node " +
                                  std::to_string(v));
    }
    rows.row(v) /= norm;
  }
  const Eigen::MatrixXd sim = rows * rows.transpose();
  struct Scored {
    double sim;
    int u, v;
  };
  std::vector<Scored> scored;
  scored.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) scored.push_back({sim(u, v), u, v});
  }
  const std::size_t cutoff = truth.edge_count();
  std::partial_sort(scored.begin(), scored.begin() + cutoff, scored.end(),
                    [](const Scored& a, const Scored& b) {
                      if (a.sim != b.sim) return a.sim > b.sim;
                      return std::tie(a.u, a.v) < std::tie(b.u, b.v);
                    });
  std::size_t hits = 0;
  for (std::size_t i = 0; i < cutoff; ++i) {
    if (truth.has_edge(scored[i].u, scored[i].v)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(cutoff);
}

std::vector<TradeoffRow> tradeoff_sweep(const EmbeddingMatrix& h,
                                        const Graph& truth,
                                        std::span<const double> b_values,
                                        const AttackConfig& cfg) {
  std::vector<TradeoffRow> rows;
  rows.reserve(b_values.size());
  for (std::size_t i = 0; i < b_values.size(); ++i) {
    const double b = b_values[i];
    if (b < 0.0) throw std::invalid_argument("tradeoff_sweep: negative b");
    const EmbeddingMatrix perturbed =
        b == 0.0 ? h
                 : perturb_embeddings(h, {0.0, b, mix_seed(cfg.seed, i, 0x901eULL)});
    TradeoffRow row;
    row.b = b;
    row.utility = link_prediction_precision(perturbed, truth);
    const AttackResult attack = run_attack(perturbed, cfg);
    row.attack_f1 = edge_prf(truth, attack.graph).f1;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace embrecon
