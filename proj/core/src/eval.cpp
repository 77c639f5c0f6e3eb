#include "embrecon/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace embrecon {

namespace {

void require_same_n(const Graph& a, const Graph& b, const char* who) {
  if (a.node_count() != b.node_count()) {
    throw std::invalid_argument(std::string(who) + ": node count mismatch");
  }
}

}  // namespace

Prf edge_prf(const Graph& truth, const Graph& recovered) {
  require_same_n(truth, recovered, "edge_prf");
  std::size_t inter = 0;
  for (const auto& [u, v] : recovered.edges()) {
    if (truth.has_edge(u, v)) ++inter;
  }
  Prf out;
  out.precision = recovered.edge_count() == 0
                      ? 0.0
                      : static_cast<double>(inter) / recovered.edge_count();
  out.recall = truth.edge_count() == 0
                   ? 0.0
                   : static_cast<double>(inter) / truth.edge_count();
  out.f1 = out.precision + out.recall > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

double jdd_jaccard(const Graph& truth, const Graph& recovered) {
  require_same_n(truth, recovered, "jdd_jaccard");
  const JddHistogram a = jdd(truth);
  const JddHistogram b = jdd(recovered);
  if (a.weighted.empty() && b.weighted.empty()) return 1.0;
  std::set<std::pair<int, int>> keys;
  for (const auto& [key, value] : a.weighted) keys.insert(key);
  for (const auto& [key, value] : b.weighted) keys.insert(key);
  double num = 0.0, den = 0.0;
  for (const auto& key : keys) {
    const auto ita = a.weighted.find(key);
    const auto itb = b.weighted.find(key);
    const double pa = ita == a.weighted.end() ? 0.0 : static_cast<double>(ita->second);
    const double pb = itb == b.weighted.end() ? 0.0 : static_cast<double>(itb->second);
    num += std::min(pa, pb);
    den += std::max(pa, pb);
  }
  return den > 0.0 ? num / den : 1.0;
}

double frobenius_error(const Graph& truth, const Graph& recovered) {
  require_same_n(truth, recovered, "frobenius_error");
  if (truth.edge_count() == 0) {
    throw std::invalid_argument("frobenius_error: truth graph has no edges");
  }
  std::size_t inter = 0;
  for (const auto& [u, v] : recovered.edges()) {
    if (truth.has_edge(u, v)) ++inter;
  }
  const std::size_t sym_diff =
      truth.edge_count() + recovered.edge_count() - 2 * inter;
  // binary symmetric adjacency: ||A_O - A_R||_F^2 = 2 |symmetric difference|
  return std::sqrt(static_cast<double>(sym_diff) /
                   static_cast<double>(truth.edge_count()));
}

std::optional<double> relative_error(double measured, double truth) {
  if (truth == 0.0) return std::nullopt;
  return std::abs(measured - truth) / truth;
}

EvalReport evaluate(const Graph& truth, const Graph& recovered) {
  require_same_n(truth, recovered, "evaluate");
  EvalReport report;
  const Prf prf = edge_prf(truth, recovered);
  report.precision = prf.precision;
  report.recall = prf.recall;
  report.f1 = prf.f1;
  report.jdd_jaccard = embrecon::jdd_jaccard(truth, recovered);
  report.frobenius_error = embrecon::frobenius_error(truth, recovered);
  report.triangle_error =
      relative_error(static_cast<double>(count_triangles(recovered)),
                     static_cast<double>(count_triangles(truth)));
  report.clustering_error = relative_error(clustering_coefficients(recovered).average,
                                           clustering_coefficients(truth).average);
  report.edges_truth = truth.edge_count();
  report.edges_recovered = recovered.edge_count();
  return report;
}

}  // namespace embrecon
