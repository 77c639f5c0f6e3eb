#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "embrecon/embedding.hpp"
#include "embrecon/graph.hpp"

namespace embrecon {

struct EigenPairs {
  Eigen::MatrixXd vectors;  // n x d, orthonormal columns
  Eigen::VectorXd values;   // matching Ritz values
};

enum class EigenOrder {
  Algebraic,  // largest eigenvalues
  Magnitude,  // largest |eigenvalues|
};

// Top-d eigenpairs of a symmetric matrix by seeded block subspace iteration
// with Rayleigh-Ritz extraction. Converged when every requested Ritz pair
// satisfies ||A v - lambda v|| <= tol * max(1, |lambda_max|). Algebraic
// order is handled by shifting the iterated operator so its spectrum is
// positive; the shift must exceed |lambda_min| (1.0 suffices for operators
// with spectrum in (-1, 1]).
EigenPairs top_eigenpairs(const Eigen::MatrixXd& sym, int d, EigenOrder order,
                          std::uint64_t seed, double tol = 1e-8,
                          int max_iterations = 20'000, double shift = 1.0);

// Rows are the top-d eigenvectors (by eigenvalue) of
// D^{-1/2} (A + I) D^{-1/2}; each eigenvector's sign is fixed by making its
// largest-magnitude entry positive. eigenvalues, when non-null, receives the
// corresponding Ritz values.
EmbeddingMatrix spectral_embedding(const Graph& g, int d, std::uint64_t seed,
                                   Eigen::VectorXd* eigenvalues = nullptr);

struct RwPmiConfig {
  int walks_per_node = 10;
  int walk_length = 40;
  int window = 5;
};

// Symmetric co-occurrence counts from seeded uniform random walks: every
// ordered position pair within the window contributes one count.
Eigen::MatrixXd rw_cooccurrence(const Graph& g, const RwPmiConfig& cfg,
                                std::uint64_t seed);

// max(0, log(C_ij * total / (row_i * row_j))) with zero-count entries at 0.
Eigen::MatrixXd ppmi_matrix(const Eigen::MatrixXd& counts);

// Co-occurrence counts from seeded uniform random walks, positive PMI,
// rank-d symmetric eigendecomposition (largest |eigenvalue|), rows scaled by
// sqrt(|eigenvalue|); same sign convention as spectral_embedding.
EmbeddingMatrix rw_pmi_embedding(const Graph& g, int d, const RwPmiConfig& cfg,
                                 std::uint64_t seed);

}  // namespace embrecon
