#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <utility>
#include <vector>

#include "embrecon/graph.hpp"
#include "embrecon/rng.hpp"

namespace testutil {

inline embrecon::Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return embrecon::Graph::from_edges(n, edges);
}

inline embrecon::Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return embrecon::Graph::from_edges(n, edges);
}

inline embrecon::Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return embrecon::Graph::from_edges(n, edges);
}

// circulant graph; regular of degree 2 * |offsets| when offsets < n/2
inline embrecon::Graph circulant_graph(int n, const std::vector<int>& offsets) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    for (int o : offsets) edges.emplace_back(v, (v + o) % n);
  }
  return embrecon::Graph::from_edges(n, edges);
}

// relabel by a permutation: new id of node v is perm[v]
inline embrecon::Graph permute_graph(const embrecon::Graph& g,
                                     const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return embrecon::Graph::from_edges(g.node_count(), edges);
}

inline std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  embrecon::Rng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
  }
  return perm;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  embrecon::Rng rng(seed);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

// AUC of `score` as a classifier for edge membership over unordered pairs
inline double edge_auc(const embrecon::Graph& g, const Eigen::MatrixXd& score) {
  std::vector<std::pair<double, int>> items;
  const int n = g.node_count();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      items.emplace_back(score(u, v), g.has_edge(u, v) ? 1 : 0);
    }
  }
  std::sort(items.begin(), items.end());
  // average ranks over ties
  const std::size_t total = items.size();
  std::vector<double> rank(total);
  std::size_t i = 0;
  while (i < total) {
    std::size_t j = i;
    while (j + 1 < total && items[j + 1].first == items[i].first) ++j;
    const double avg = 0.5 * (i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) rank[t] = avg;
    i = j + 1;
  }
  double pos_rank_sum = 0.0;
  std::size_t pos = 0;
  for (std::size_t t = 0; t < total; ++t) {
    if (items[t].second) {
      pos_rank_sum += rank[t];
      ++pos;
    }
  }
  const std::size_t neg = total - pos;
  if (pos == 0 || neg == 0) return 0.5;
  return (pos_rank_sum - 0.5 * pos * (pos + 1)) /
         (static_cast<double>(pos) * neg);
}

// relative error between an analytic gradient and a finite-difference one
inline double gradient_rel_error(const Eigen::MatrixXd& analytic,
                                 const Eigen::MatrixXd& numeric) {
  const double denom = std::max(numeric.norm(), 1e-12);
  return (analytic - numeric).norm() / denom;
}

}  // namespace testutil
