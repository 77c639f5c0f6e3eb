#pragma once

#include <cstddef>
#include <optional>

#include "embrecon/graph.hpp"

namespace embrecon {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Edge precision/recall/F1 of `recovered` against `truth` over unordered
// pairs; empty recovered edge set gives precision 0.
Prf edge_prf(const Graph& truth, const Graph& recovered);

// Generalized Jaccard similarity of the two joint degree distributions:
// sum over key union of min(P_O, P_R) / sum of max(P_O, P_R).
// Both graphs empty: defined as 1.
double jdd_jaccard(const Graph& truth, const Graph& recovered);

// ||A_O - A_R||_F / ||A_O||_F; the truth graph must have at least one edge.
double frobenius_error(const Graph& truth, const Graph& recovered);

// |measured - truth| / truth, or nullopt when truth == 0.
std::optional<double> relative_error(double measured, double truth);

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double jdd_jaccard = 0.0;
  double frobenius_error = 0.0;
  std::optional<double> triangle_error;
  std::optional<double> clustering_error;
  std::size_t edges_truth = 0;
  std::size_t edges_recovered = 0;
};

EvalReport evaluate(const Graph& truth, const Graph& recovered);

}  // namespace embrecon
