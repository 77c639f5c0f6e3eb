#include "embrecon/gae.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "embrecon/rng.hpp"

namespace embrecon {

Eigen::MatrixXd normalize_adjacency(const Graph& g) {
  const int n = g.node_count();
  Eigen::MatrixXd a = g.dense_adjacency();
  a.diagonal().array() += 1.0;
  Eigen::VectorXd dinv = a.rowwise().sum().array().rsqrt();
  return dinv.asDiagonal() * a * dinv.asDiagonal();
}

Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& h) {
  const Eigen::VectorXd sq = h.rowwise().squaredNorm();
  Eigen::MatrixXd c = sq.replicate(1, h.rows()) +
                      sq.transpose().replicate(h.rows(), 1) -
                      2.0 * (h * h.transpose());
  c = c.cwiseMax(0.0);
  c.diagonal().setZero();
  return c;
}

GaeParams GaeParams::init(int d, int d_latent, std::uint64_t seed) {
  if (d < 1 || d_latent < 1) throw std::invalid_argument("GaeParams: bad shape");
  const double bound = std::sqrt(6.0 / (d + d_latent));
  Rng rng(seed);
  GaeParams p;
  p.theta.resize(d, d_latent);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d_latent; ++j) {
      p.theta(i, j) = bound * (2.0 * rng.uniform() - 1.0);
    }
  }
  return p;
}

Eigen::MatrixXd encode(const Eigen::MatrixXd& a_hat, const Eigen::MatrixXd& h,
                       const GaeParams& params) {
  if (a_hat.rows() != a_hat.cols() || a_hat.cols() != h.rows() ||
      h.cols() != params.theta.rows()) {
    throw std::invalid_argument("encode: shape mismatch");
  }
  return a_hat * (h * params.theta);
}

Eigen::MatrixXd encode(const Graph& g, const Eigen::MatrixXd& h,
                       const GaeParams& params) {
  return encode(normalize_adjacency(g), h, params);
}

Eigen::MatrixXd decode(const Eigen::MatrixXd& latent) {
  const Eigen::MatrixXd s = latent * latent.transpose();
  const auto n = s.rows();
  // mirrored from the upper triangle: symmetric by construction
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double sig = 1.0 / (1.0 + std::exp(-s(i, j)));
      a(i, j) = sig;
      a(j, i) = sig;
    }
  }
  return a;
}

double loss_laplacian(const Eigen::MatrixXd& weighted_adj,
                      const Eigen::MatrixXd& h0) {
  const auto n = weighted_adj.rows();
  if (weighted_adj.cols() != n || h0.rows() != n) {
    throw std::invalid_argument("loss_laplacian: shape mismatch");
  }
  const Eigen::MatrixXd c = pairwise_sq_dists(h0);
  return (weighted_adj.array() * c.array()).sum() / (2.0 * n * n);
}

double loss_laplacian_trace(const Eigen::MatrixXd& weighted_adj,
                            const Eigen::MatrixXd& h0) {
  const auto n = weighted_adj.rows();
  if (weighted_adj.cols() != n || h0.rows() != n) {
    throw std::invalid_argument("loss_laplacian_trace: shape mismatch");
  }
  const Eigen::VectorXd deg = weighted_adj.rowwise().sum();
  const Eigen::MatrixXd lap =
      Eigen::MatrixXd(deg.asDiagonal()) - weighted_adj;
  return (h0.transpose() * lap * h0).trace() / (static_cast<double>(n) * n);
}

double loss_sparsity(const Eigen::MatrixXd& weighted_adj, double alpha,
                     double beta) {
  if (!(alpha > 0.0) || beta < 0.0) {
    throw std::invalid_argument("loss_sparsity: need alpha > 0, beta >= 0");
  }
  const Eigen::VectorXd rows = weighted_adj.rowwise().sum();
  for (Eigen::Index v = 0; v < rows.size(); ++v) {
    if (!(rows(v) > 0.0)) {
      throw std::runtime_error("loss_sparsity: non-positive row sum at node " +
                               std::to_string(v));
    }
  }
  return -alpha * rows.array().log().sum() +
         0.5 * beta * weighted_adj.squaredNorm();
}

namespace {

// A^t o log(A') + (1 - A^t) o log(1 - A') with A' clamped entrywise
Eigen::MatrixXd bce_matrix(const Eigen::MatrixXd& weighted_adj,
                           const Eigen::MatrixXd& prev) {
  const Eigen::ArrayXXd a =
      weighted_adj.array().max(kReconClampEps).min(1.0 - kReconClampEps);
  const Eigen::ArrayXXd t = prev.array();
  return (t * a.log() + (1.0 - t) * (1.0 - a).log()).matrix();
}

}  // namespace

double loss_reconstruction(const Eigen::MatrixXd& weighted_adj,
                           const Eigen::MatrixXd& prev, ReconForm form) {
  const auto n = weighted_adj.rows();
  if (weighted_adj.cols() != n || prev.rows() != n || prev.cols() != n) {
    throw std::invalid_argument("loss_reconstruction: shape mismatch");
  }
  const Eigen::MatrixXd b = bce_matrix(weighted_adj, prev);
  if (form == ReconForm::SquaredFrobenius) {
    return b.squaredNorm() / (2.0 * n * n);
  }
  return -b.sum() / (static_cast<double>(n) * n);
}

double loss_reconstruction(const Eigen::MatrixXd& weighted_adj,
                           const Graph& prev, ReconForm form) {
  return loss_reconstruction(weighted_adj, prev.dense_adjacency(), form);
}

GaeEval total_loss_and_gradients(const Eigen::MatrixXd& a_hat,
                                 const Eigen::MatrixXd& features,
                                 const GaeParams& params,
                                 const Eigen::MatrixXd& h0,
                                 const Eigen::MatrixXd& prev_adj,
                                 double alpha, double beta,
                                 const LossWeights& weights, ReconForm form) {
  const auto n = a_hat.rows();
  if (a_hat.cols() != n || features.rows() != n || h0.rows() != n ||
      prev_adj.rows() != n || prev_adj.cols() != n ||
      features.cols() != params.theta.rows()) {
    throw std::invalid_argument("total_loss_and_gradients: shape mismatch");
  }

  GaeEval ev;
  const Eigen::MatrixXd propagated = a_hat * features;
  ev.latent = propagated * params.theta;
  const Eigen::MatrixXd scores = ev.latent * ev.latent.transpose();
  Eigen::ArrayXXd sig = ((-scores.array()).exp() + 1.0).inverse();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) sig(j, i) = sig(i, j);
  }
  ev.weighted_adj = sig.matrix();
  ev.weighted_adj.diagonal().setZero();
  const Eigen::MatrixXd& aw = ev.weighted_adj;

  // losses
  const Eigen::MatrixXd cost = pairwise_sq_dists(h0);
  ev.loss_laplacian = (aw.array() * cost.array()).sum() / (2.0 * n * n);

  const Eigen::VectorXd row_sums = aw.rowwise().sum();
  for (Eigen::Index v = 0; v < n; ++v) {
    if (!(row_sums(v) > 0.0)) {
      throw std::runtime_error("sparsity loss: non-positive row sum at node " +
                               std::to_string(v));
    }
  }
  ev.loss_sparsity =
      -alpha * row_sums.array().log().sum() + 0.5 * beta * aw.squaredNorm();

  const Eigen::MatrixXd b = bce_matrix(aw, prev_adj);
  ev.loss_reconstruction = form == ReconForm::SquaredFrobenius
                               ? b.squaredNorm() / (2.0 * n * n)
                               : -b.sum() / (static_cast<double>(n) * n);

  ev.total = weights.laplacian * ev.loss_laplacian +
             weights.sparsity * ev.loss_sparsity +
             weights.reconstruction * ev.loss_reconstruction;
  if (!std::isfinite(ev.loss_laplacian)) throw std::runtime_error("laplacian loss non-finite");
  if (!std::isfinite(ev.loss_sparsity)) throw std::runtime_error("sparsity loss non-finite");
  if (!std::isfinite(ev.loss_reconstruction)) throw std::runtime_error("reconstruction loss non-finite");

  // dLoss/dA for each term (diagonal masked: decode pins it to zero)
  Eigen::MatrixXd g_lap = cost / (2.0 * n * n);

  Eigen::MatrixXd g_spa =
      (-alpha / row_sums.array()).replicate(1, n).matrix() + beta * aw;

  const Eigen::ArrayXXd clamped =
      aw.array().max(kReconClampEps).min(1.0 - kReconClampEps);
  const Eigen::ArrayXXd dbda =
      prev_adj.array() / clamped - (1.0 - prev_adj.array()) / (1.0 - clamped);
  const Eigen::ArrayXXd in_range =
      ((aw.array() > kReconClampEps) && (aw.array() < 1.0 - kReconClampEps))
          .cast<double>();
  Eigen::MatrixXd g_rec;
  if (form == ReconForm::SquaredFrobenius) {
    g_rec = (b.array() * dbda * in_range).matrix() / (static_cast<double>(n) * n);
  } else {
    g_rec = (-dbda * in_range).matrix() / (static_cast<double>(n) * n);
  }

  // shared backprop path: dL/dTheta = (A_hat F)^T (G_s + G_s^T) Z with
  // G_s = dL/dA o sigma'(scores), diagonal masked
  const Eigen::ArrayXXd dsig = sig * (1.0 - sig);
  const auto back = [&](Eigen::MatrixXd g_adj) {
    g_adj.diagonal().setZero();
    Eigen::MatrixXd gs = (g_adj.array() * dsig).matrix();
    return propagated.transpose() * ((gs + gs.transpose()) * ev.latent);
  };
  ev.grad_laplacian = back(std::move(g_lap));
  ev.grad_sparsity = back(std::move(g_spa));
  ev.grad_reconstruction = back(std::move(g_rec));
  ev.grad_total = weights.laplacian * ev.grad_laplacian +
                  weights.sparsity * ev.grad_sparsity +
                  weights.reconstruction * ev.grad_reconstruction;
  return ev;
}

void adam_step(Eigen::MatrixXd& params, const Eigen::MatrixXd& grad,
               AdamState& state, double lr) {
  if (params.rows() != grad.rows() || params.cols() != grad.cols()) {
    throw std::invalid_argument("adam_step: shape mismatch");
  }
  if (grad.norm() < 1e-12) return;
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  if (state.step_count == 0) {
    state.first_moment = Eigen::MatrixXd::Zero(params.rows(), params.cols());
    state.second_moment = Eigen::MatrixXd::Zero(params.rows(), params.cols());
  }
  ++state.step_count;
  state.first_moment = kBeta1 * state.first_moment + (1.0 - kBeta1) * grad;
  state.second_moment =
      kBeta2 * state.second_moment.array() + (1.0 - kBeta2) * grad.array().square();
  const double bc1 = 1.0 - std::pow(kBeta1, state.step_count);
  const double bc2 = 1.0 - std::pow(kBeta2, state.step_count);
  params.array() -= lr * (state.first_moment.array() / bc1) /
                    ((state.second_moment.array() / bc2).sqrt() + kEps);
}

}  // namespace embrecon
