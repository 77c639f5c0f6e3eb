#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "embrecon/embedding.hpp"
#include "embrecon/gae.hpp"
#include "embrecon/graph.hpp"
#include "embrecon/metric.hpp"

namespace embrecon {

struct MetricStepConfig {
  int steps = 5;           // inner fit steps per outer iteration
  double lr = 0.3;
  double neg_ratio = 5.0;
  double tau = 1.0;        // temperature of the fit's supervision probabilities
};

struct GaeConfig {
  double lr = 0.01;        // Adam step size
  int latent_dim = 0;      // 0 = same as the embedding dimension
  LossWeights weights;
  ReconForm recon_form = ReconForm::SquaredFrobenius;
  // optional warm start; default is the seeded scaled-uniform init
  std::optional<Eigen::MatrixXd> theta0;
};

struct AttackConfig {
  int k = 0;               // estimated average degree (required, >= 1)
  double tau = 1.0;        // temperature for seeding/sparsification sampling
  double alpha = 0.3;
  double beta = 0.1;
  double eta = 0.5;        // update rate of the seed/structure combination
  int heads = 16;
  int iterations = 400;
  MetricStepConfig metric;
  GaeConfig gae;
  bool early_stop = false;
  double early_stop_tol = 1e-6;
  int early_stop_patience = 20;
  std::uint64_t seed = 0;
};

struct IterationRecord {
  int iteration = 0;
  double loss_laplacian = 0.0;
  double loss_sparsity = 0.0;
  double loss_reconstruction = 0.0;
  double loss_total = 0.0;
  std::size_t edges = 0;  // edge count of the binarized A^{t+1}
};

struct AttackTrace {
  std::vector<IterationRecord> iterations;
};

class AttackError : public std::runtime_error {
 public:
  AttackError(const std::string& what, int iteration, AttackTrace trace)
      : std::runtime_error(what), iteration(iteration), trace(std::move(trace)) {}

  int iteration;
  AttackTrace trace;
};

struct AttackResult {
  Graph graph;
  AttackTrace trace;
};

// (1 - eta) a0 + eta a_next, entrywise.
Eigen::MatrixXd combine(const Eigen::MatrixXd& a0, const Eigen::MatrixXd& a_next,
                        double eta);

// min(max(0, x), 1), entrywise; idempotent.
Eigen::MatrixXd clip_unit(const Eigen::MatrixXd& a);

// One Bernoulli draw per unordered pair (v < u) with probability a_vu,
// mirrored; the diagonal stays empty.
Graph binarize_bernoulli(const Eigen::MatrixXd& a, std::uint64_t seed);

// Full recovery loop: seed graph by Gumbel-Top-k over plain-cosine edge
// probabilities, then per iteration {metric fit + resample, GAE
// encode/decode, loss backprop + Adam step, combine with the seed, clip,
// Bernoulli binarize}. The encoder consumes the input embeddings as node
// features every iteration; its latent output feeds the next iteration's
// metric fit and resampling.
AttackResult run_attack(const EmbeddingMatrix& h0, const AttackConfig& cfg);

// Ablation without metric learning: seed graph, one GAE training pass
// (cfg.iterations Adam steps against the fixed seed graph), then a single
// combine/clip/binarize.
AttackResult run_attack_ablation_no_gml(const EmbeddingMatrix& h0,
                                        const AttackConfig& cfg);

}  // namespace embrecon
