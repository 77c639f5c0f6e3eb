#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace embrecon {

// Undirected simple graph over node ids 0..n-1. Immutable after
// construction; safe to share across threads. Adjacency lists are kept
// sorted; up to kDenseNodeLimit nodes an additional packed bit matrix backs
// O(1) edge queries (identical semantics either way).
class Graph {
 public:
  static constexpr int kDenseNodeLimit = 10'000;

  Graph() = default;
  explicit Graph(int node_count);

  // Validates ids, rejects self-loops, collapses duplicates/orientations.
  static Graph from_edges(int node_count,
                          const std::vector<std::pair<int, int>>& edge_list);

  int node_count() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  bool has_edge(int u, int v) const;
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  // Edges as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;

  Eigen::MatrixXd dense_adjacency() const;

  double average_degree() const;  // 2|E|/n

 private:
  int n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> bits_;  // n*n bit matrix when n <= kDenseNodeLimit

  void finalize_adjacency();
};

// Edge-list text I/O. Lines hold two whitespace-separated node ids;
// '#' starts a comment. Node count is max id + 1 unless a larger
// min_node_count is given.
Graph load_edge_list(std::istream& in, int min_node_count = 0);
Graph load_edge_list_file(const std::string& path, int min_node_count = 0);
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

// Induced subgraph on the largest connected component, nodes relabeled
// 0..n'-1 preserving original id order. Ties between equal-sized components
// go to the one containing the smallest original id. original_ids, when
// non-null, receives the original id of each new node.
Graph largest_connected_component(const Graph& g,
                                  std::vector<int>* original_ids = nullptr);

long long count_triangles(const Graph& g);

struct ClusteringResult {
  std::vector<double> per_node;
  double average = 0.0;
};
// c_v = 2 N(v) / (deg(v) (deg(v)-1)); nodes of degree <= 1 get 0.
ClusteringResult clustering_coefficients(const Graph& g);

// Joint degree distribution: P(k1,k2) = mu(k1,k2) * m(k1,k2) over unordered
// degree pairs k1 <= k2, with mu = 1 if k1 == k2 else 2 and m the number of
// edges joining a degree-k1 node to a degree-k2 node.
struct JddHistogram {
  std::map<std::pair<int, int>, long long> weighted;

  long long edge_mass() const;  // sum of m(k1,k2); equals |E|
};
JddHistogram jdd(const Graph& g);

}  // namespace embrecon
