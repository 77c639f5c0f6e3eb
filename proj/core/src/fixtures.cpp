#include "embrecon/fixtures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "embrecon/gae.hpp"
#include "embrecon/rng.hpp"

namespace embrecon {

namespace {

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (vectors(arg, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

}  // namespace

EigenPairs top_eigenpairs(const Eigen::MatrixXd& sym, int d, EigenOrder order,
                          std::uint64_t seed, double tol, int max_iterations,
                          double shift) {
  const int n = static_cast<int>(sym.rows());
  if (sym.cols() != n) throw std::invalid_argument("top_eigenpairs: matrix not square");
  if (d < 1 || d > n) throw std::invalid_argument("top_eigenpairs: bad rank");

  // oversampled block: extra columns buy convergence speed when the spectrum
  // is flat around the cut
  const int block = std::min(n, std::max(2 * d, d + 16));

  Rng rng(seed);
  Eigen::MatrixXd q(n, block);
  for (int j = 0; j < block; ++j) {
    for (int i = 0; i < n; ++i) q(i, j) = rng.normal();
  }
  q = Eigen::HouseholderQR<Eigen::MatrixXd>(q).householderQ() *
      Eigen::MatrixXd::Identity(n, block);

  const bool shifted = order == EigenOrder::Algebraic;
  Eigen::MatrixXd op = sym;
  if (shifted) op.diagonal().array() += shift;

  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::MatrixXd y = op * q;
    q = Eigen::HouseholderQR<Eigen::MatrixXd>(y).householderQ() *
        Eigen::MatrixXd::Identity(n, block);

    if (it % 5 != 4 && it != max_iterations - 1) continue;

    // Rayleigh-Ritz on the original matrix
    const Eigen::MatrixXd aq = sym * q;
    const Eigen::MatrixXd small = q.transpose() * aq;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("top_eigenpairs: dense projection solve failed");
    }
    std::vector<int> idx(block);
    std::iota(idx.begin(), idx.end(), 0);
    const auto& ritz = es.eigenvalues();
    if (order == EigenOrder::Algebraic) {
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return ritz(a) > ritz(b); });
    } else {
      std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(ritz(a)) > std::abs(ritz(b));
      });
    }
    vectors.resize(n, d);
    values.resize(d);
    for (int j = 0; j < d; ++j) {
      vectors.col(j) = q * es.eigenvectors().col(idx[j]);
      values(j) = ritz(idx[j]);
    }
    const double scale = std::max(1.0, std::abs(values(0)));
    bool converged = true;
    for (int j = 0; j < d && converged; ++j) {
      const double resid = (sym * vectors.col(j) - values(j) * vectors.col(j)).norm();
      if (resid > tol * scale) converged = false;
    }
    if (converged) {
      fix_signs(vectors);
      return {std::move(vectors), std::move(values)};
    }
  }
  throw std::runtime_error("top_eigenpairs: no convergence within iteration cap");
}

EmbeddingMatrix spectral_embedding(const Graph& g, int d, std::uint64_t seed,
                                   Eigen::VectorXd* eigenvalues) {
  const int n = g.node_count();
  if (d < 1 || d >= n) {
    throw std::invalid_argument("spectral_embedding: need 1 <= d < n");
  }
  const Eigen::MatrixXd a_hat = normalize_adjacency(g);
  // spectrum of a_hat lies in (-1, 1]; +1 shift makes algebraic order
  // coincide with magnitude order for the iteration
  EigenPairs pairs = top_eigenpairs(a_hat, d, EigenOrder::Algebraic,
                                    mix_seed(seed, 0x5bec7ea1ULL));
  if (eigenvalues) *eigenvalues = pairs.values;
  EmbeddingMatrix h;
  h.rows = std::move(pairs.vectors);
  h.normalized = false;
  return h;
}

Eigen::MatrixXd rw_cooccurrence(const Graph& g, const RwPmiConfig& cfg,
                                std::uint64_t seed) {
  if (cfg.walks_per_node < 1 || cfg.walk_length < 1 || cfg.window < 1) {
    throw std::invalid_argument("rw_cooccurrence: bad walk parameters");
  }
  const int n = g.node_count();
  Rng rng(seed);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> walk;
  walk.reserve(cfg.walk_length + 1);
  for (int w = 0; w < cfg.walks_per_node; ++w) {
    for (int start = 0; start < n; ++start) {
      walk.clear();
      walk.push_back(start);
      int v = start;
      for (int s = 0; s < cfg.walk_length; ++s) {
        const auto& nb = g.neighbors(v);
        if (nb.empty()) break;
        v = nb[rng.uniform_int(static_cast<int>(nb.size()))];
        walk.push_back(v);
      }
      const int len = static_cast<int>(walk.size());
      for (int i = 0; i < len; ++i) {
        const int lo = std::max(0, i - cfg.window);
        const int hi = std::min(len - 1, i + cfg.window);
        for (int j = lo; j <= hi; ++j) {
          if (j != i) counts(walk[i], walk[j]) += 1.0;
        }
      }
    }
  }
  return counts;
}

Eigen::MatrixXd ppmi_matrix(const Eigen::MatrixXd& counts) {
  const auto n = counts.rows();
  const double total = counts.sum();
  if (total <= 0.0) throw std::runtime_error("ppmi_matrix: no co-occurrences");
  const Eigen::VectorXd row_sum = counts.rowwise().sum();
  Eigen::MatrixXd ppmi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double c = counts(i, j);
      if (c <= 0.0) continue;
      const double pmi = std::log(c * total / (row_sum(i) * row_sum(j)));
      if (pmi > 0.0) ppmi(i, j) = pmi;
    }
  }
  return ppmi;
}

EmbeddingMatrix rw_pmi_embedding(const Graph& g, int d, const RwPmiConfig& cfg,
                                 std::uint64_t seed) {
  const int n = g.node_count();
  if (d < 1 || d >= n) {
    throw std::invalid_argument("rw_pmi_embedding: need 1 <= d < n");
  }
  const Eigen::MatrixXd counts =
      rw_cooccurrence(g, cfg, mix_seed(seed, 0x77a1c5ULL));
  const Eigen::MatrixXd ppmi = ppmi_matrix(counts);
  EigenPairs pairs = top_eigenpairs(ppmi, d, EigenOrder::Magnitude,
                                    mix_seed(seed, 0x99d3f2ULL));
  EmbeddingMatrix h;
  h.rows = pairs.vectors;  // sign convention already fixed
  for (int j = 0; j < d; ++j) {
    h.rows.col(j) *= std::sqrt(std::abs(pairs.values(j)));
  }
  h.normalized = false;
  return h;
}

}  // namespace embrecon
