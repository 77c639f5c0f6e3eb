#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "embrecon/embedding.hpp"
#include "embrecon/graph.hpp"

namespace embrecon {

// Learnable multi-head weight vectors for the weighted cosine distance; all
// nodes share the same heads. The all-ones start reproduces the plain cosine
// distance exactly.
struct MetricHeads {
  Eigen::MatrixXd weights;  // m x d

  static MetricHeads ones(int heads, int dim);
  int head_count() const { return static_cast<int>(weights.rows()); }
  int dim() const { return static_cast<int>(weights.cols()); }
};

// 1 - cos(a, b), in [0, 2]. Zero vectors are a validation error.
double cosine_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// phi(a, b) = 1 - (1/m) sum_i cos(w_i o a, w_i o b). A head whose reweighted
// vector vanishes contributes cos = 0.
double multihead_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                          const MetricHeads& heads);

// p_vu = exp(-tau * phi(h_v, h_u)); symmetric; diagonal masked to 0 and
// excluded from all sampling.
struct EdgeProbabilityMatrix {
  Eigen::MatrixXd p;
  double tau = 1.0;

  int node_count() const { return static_cast<int>(p.rows()); }
};

EdgeProbabilityMatrix edge_probabilities(const EmbeddingMatrix& h,
                                         const MetricHeads& heads, double tau);

// Gumbel-Top-k row selection: indices of the k largest log(p) + Gumbel(0,1)
// scores. One Gumbel variate is drawn per entry in index order, so the
// selection distribution is invariant to positive rescaling of p.
std::vector<int> gumbel_topk_row(const Eigen::VectorXd& probs, int k,
                                 std::uint64_t seed, int skip_index = -1);

// Per-row Gumbel-Top-k, union of selections symmetrized.
Graph gumbel_topk_graph(const EdgeProbabilityMatrix& p, int k,
                        std::uint64_t seed);

// Labeled node pairs for the supervision loss.
struct PairBatch {
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> labels;
};

// Mean binary cross-entropy of p_vu = exp(-tau * phi) against the labels,
// with probabilities clamped away from {0, 1}.
double metric_bce_loss(const MetricHeads& heads, const Eigen::MatrixXd& h,
                       const PairBatch& batch, double tau);
Eigen::MatrixXd metric_bce_gradient(const MetricHeads& heads,
                                    const Eigen::MatrixXd& h,
                                    const PairBatch& batch, double tau);

struct FitConfig {
  int steps = 5;
  double lr = 0.3;
  double neg_ratio = 5.0;  // negatives per positive
  double tau = 1.0;        // temperature of the supervision probabilities
};

struct FitResult {
  MetricHeads heads;
  std::vector<double> loss_trace;  // loss after each accepted step
};

// Supervised metric fit: positives are the edges of `supervision`, negatives
// are neg_ratio * |E| uniformly sampled non-edges. Gradient descent with
// step backtracking (a step that would increase the loss is halved, then
// rejected), so the recorded loss trace is non-increasing.
FitResult fit_metric(const MetricHeads& heads, const EmbeddingMatrix& h,
                     const Graph& supervision, const FitConfig& cfg,
                     std::uint64_t seed);

}  // namespace embrecon
