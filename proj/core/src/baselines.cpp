#include "embrecon/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace embrecon {

namespace {

Eigen::MatrixXd cosine_similarity(const EmbeddingMatrix& h) {
  Eigen::MatrixXd rows = h.rows;
  for (int v = 0; v < h.node_count(); ++v) {
    const double norm = rows.row(v).norm();
    if (norm == 0.0) {
      throw std::invalid_argument("baseline: zero embedding row at node " +
                                  std::to_string(v));
    }
    rows.row(v) /= norm;
  }
  return rows * rows.transpose();
}

struct ScoredEdge {
  double sim;
  int u, v;
};

void sort_desc(std::vector<ScoredEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const ScoredEdge& a, const ScoredEdge& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
}

}  // namespace

Graph direct_recovery(const EmbeddingMatrix& h, double k) {
  const int n = h.node_count();
  const auto total_pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  const auto target = static_cast<std::size_t>(std::floor(k * n / 2.0));
  if (target > total_pairs) {
    throw std::invalid_argument("direct_recovery: k n / 2 exceeds the pair count");
  }
  const Eigen::MatrixXd sim = cosine_similarity(h);
  std::vector<ScoredEdge> scored;
  scored.reserve(total_pairs);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) scored.push_back({sim(u, v), u, v});
  }
  sort_desc(scored);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(target);
  for (std::size_t i = 0; i < target; ++i) edges.emplace_back(scored[i].u, scored[i].v);
  return Graph::from_edges(n, edges);
}

Graph knn_graph(const EmbeddingMatrix& h, int k) {
  const int n = h.node_count();
  if (k < 1 || k >= n) throw std::invalid_argument("knn_graph: need 1 <= k < n");
  const Eigen::MatrixXd sim = cosine_similarity(h);

  std::vector<std::pair<int, int>> selected;
  selected.reserve(static_cast<std::size_t>(n) * k);
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) {
    order.clear();
    for (int u = 0; u < n; ++u) {
      if (u != v) order.push_back(u);
    }
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](int a, int b) {
                        if (sim(v, a) != sim(v, b)) return sim(v, a) > sim(v, b);
                        return a < b;
                      });
    for (int i = 0; i < k; ++i) {
      const int u = order[i];
      selected.emplace_back(std::min(v, u), std::max(v, u));
    }
  }
  Graph unioned = Graph::from_edges(n, selected);

  const auto target = static_cast<std::size_t>(
      std::floor(static_cast<double>(k) * n / 2.0));
  if (unioned.edge_count() <= target) return unioned;

  std::vector<ScoredEdge> scored;
  scored.reserve(unioned.edge_count());
  for (const auto& [u, v] : unioned.edges()) scored.push_back({sim(u, v), u, v});
  sort_desc(scored);
  std::vector<std::pair<int, int>> kept;
  kept.reserve(target);
  for (std::size_t i = 0; i < target; ++i) kept.emplace_back(scored[i].u, scored[i].v);
  return Graph::from_edges(n, kept);
}

}  // namespace embrecon
