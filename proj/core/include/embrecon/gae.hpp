#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "embrecon/graph.hpp"

namespace embrecon {

// GCN propagation operator: D~^{-1/2} (A + I) D~^{-1/2} with
// D~ = rowsum(A + I).
Eigen::MatrixXd normalize_adjacency(const Graph& g);

// Squared pairwise row distances ||h_v - h_u||^2 (zero diagonal).
Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& h);

// Single linear graph-convolution layer weight (d x d_latent).
struct GaeParams {
  Eigen::MatrixXd theta;

  // seeded scaled-uniform init, bound +-sqrt(6 / (d + d_latent))
  static GaeParams init(int d, int d_latent, std::uint64_t seed);
};

// A_hat * H * Theta
Eigen::MatrixXd encode(const Eigen::MatrixXd& a_hat, const Eigen::MatrixXd& h,
                       const GaeParams& params);
Eigen::MatrixXd encode(const Graph& g, const Eigen::MatrixXd& h,
                       const GaeParams& params);

// sigma(Z Z^T) with the diagonal zeroed afterwards.
Eigen::MatrixXd decode(const Eigen::MatrixXd& latent);

// (1/(2 n^2)) sum_{v,u} A_vu ||h0_v - h0_u||^2
double loss_laplacian(const Eigen::MatrixXd& weighted_adj,
                      const Eigen::MatrixXd& h0);
// Same value computed as tr(H0^T L H0) / n^2 with L = D - A; cross-check
// route for the summation form.
double loss_laplacian_trace(const Eigen::MatrixXd& weighted_adj,
                            const Eigen::MatrixXd& h0);

// -alpha 1^T log(A 1) + (beta/2) ||A||_F^2
double loss_sparsity(const Eigen::MatrixXd& weighted_adj, double alpha,
                     double beta);

enum class ReconForm {
  SquaredFrobenius,  // (1/(2 n^2)) || A^t o log A' + (1 - A^t) o log(1 - A') ||_F^2
  MeanBce,           // -(1/n^2) sum [ A^t o log A' + (1 - A^t) o log(1 - A') ]
};

inline constexpr double kReconClampEps = 1e-7;

double loss_reconstruction(const Eigen::MatrixXd& weighted_adj,
                           const Graph& prev,
                           ReconForm form = ReconForm::SquaredFrobenius);
double loss_reconstruction(const Eigen::MatrixXd& weighted_adj,
                           const Eigen::MatrixXd& prev,
                           ReconForm form = ReconForm::SquaredFrobenius);

struct LossWeights {
  double laplacian = 1.0;
  double sparsity = 1.0;
  double reconstruction = 1.0;
};

// One forward/backward pass of the autoencoder objective. latent = A_hat H
// Theta, weighted_adj = decode(latent); the three losses are evaluated on
// weighted_adj and differentiated back to Theta, per term and combined.
struct GaeEval {
  double loss_laplacian = 0.0;
  double loss_sparsity = 0.0;
  double loss_reconstruction = 0.0;
  double total = 0.0;
  Eigen::MatrixXd latent;
  Eigen::MatrixXd weighted_adj;
  Eigen::MatrixXd grad_laplacian;
  Eigen::MatrixXd grad_sparsity;
  Eigen::MatrixXd grad_reconstruction;
  Eigen::MatrixXd grad_total;
};

GaeEval total_loss_and_gradients(const Eigen::MatrixXd& a_hat,
                                 const Eigen::MatrixXd& features,
                                 const GaeParams& params,
                                 const Eigen::MatrixXd& h0,
                                 const Eigen::MatrixXd& prev_adj,
                                 double alpha, double beta,
                                 const LossWeights& weights = {},
                                 ReconForm form = ReconForm::SquaredFrobenius);

// Adam (beta1 = 0.9, beta2 = 0.999, eps = 1e-8). Gradients with Frobenius
// norm below 1e-12 are treated as zero: no state or parameter update.
struct AdamState {
  Eigen::MatrixXd first_moment;
  Eigen::MatrixXd second_moment;
  long step_count = 0;
};

void adam_step(Eigen::MatrixXd& params, const Eigen::MatrixXd& grad,
               AdamState& state, double lr);

}  // namespace embrecon
