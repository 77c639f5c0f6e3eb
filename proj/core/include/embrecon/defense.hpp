#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "embrecon/attack.hpp"
#include "embrecon/embedding.hpp"
#include "embrecon/graph.hpp"

namespace embrecon {

struct NoiseConfig {
  double mu = 0.0;
  double b = 0.1;  // Laplace scale, > 0
  std::uint64_t seed = 0;
};

// Adds i.i.d. Laplace(mu, b) noise to every entry (inverse-CDF sampling in
// row-major order). The output is no longer marked row-normalized.
EmbeddingMatrix perturb_embeddings(const EmbeddingMatrix& h,
                                   const NoiseConfig& cfg);

// Utility metric: rank all unordered pairs by cosine similarity and take the
// fraction of true edges among the top |E_O| pairs.
double link_prediction_precision(const EmbeddingMatrix& h, const Graph& truth);

struct TradeoffRow {
  double b = 0.0;
  double utility = 0.0;
  double attack_f1 = 0.0;
};

// For each Laplace scale: perturb (b = 0 passes the input through), measure
// utility, run the full attack, measure F1 against the truth. The attack
// seed is cfg.seed for every row, so the b = 0 row equals the unperturbed
// run; noise seeds are derived per row.
std::vector<TradeoffRow> tradeoff_sweep(const EmbeddingMatrix& h,
                                        const Graph& truth,
                                        std::span<const double> b_values,
                                        const AttackConfig& cfg);

}  // namespace embrecon
