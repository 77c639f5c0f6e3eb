#include "embrecon/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace embrecon {

Graph::Graph(int node_count) : n_(node_count), adj_(node_count) {
  if (node_count < 0) throw std::invalid_argument("graph: negative node count");
  if (n_ > 0 && n_ <= kDenseNodeLimit) {
    bits_.assign((static_cast<std::size_t>(n_) * n_ + 63) / 64, 0);
  }
}

Graph Graph::from_edges(int node_count,
                        const std::vector<std::pair<int, int>>& edge_list) {
  Graph g(node_count);
  for (const auto& [u, v] : edge_list) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count) {
      throw std::invalid_argument("graph: node id out of range: (" +
                                  std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    if (u == v) {
      throw std::invalid_argument("graph: self-loop rejected at node " +
                                  std::to_string(u));
    }
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  g.finalize_adjacency();
  return g;
}

void Graph::finalize_adjacency() {
  edge_count_ = 0;
  for (int v = 0; v < n_; ++v) {
    auto& nb = adj_[v];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    edge_count_ += nb.size();
    if (!bits_.empty()) {
      for (int u : nb) {
        const std::size_t idx = static_cast<std::size_t>(v) * n_ + u;
        bits_[idx >> 6] |= (1ULL << (idx & 63));
      }
    }
  }
  edge_count_ /= 2;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
  if (!bits_.empty()) {
    const std::size_t idx = static_cast<std::size_t>(u) * n_ + v;
    return (bits_[idx >> 6] >> (idx & 63)) & 1ULL;
  }
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int u = 0; u < n_; ++u) {
    for (int v : adj_[u]) {
      if (v > u) out.emplace_back(u, v);
    }
  }
  return out;
}

Eigen::MatrixXd Graph::dense_adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int u = 0; u < n_; ++u) {
    for (int v : adj_[u]) a(u, v) = 1.0;
  }
  return a;
}

double Graph::average_degree() const {
  if (n_ == 0) return 0.0;
  return 2.0 * static_cast<double>(edge_count_) / n_;
}

Graph load_edge_list(std::istream& in, int min_node_count) {
  std::vector<std::pair<int, int>> edges;
  int max_id = -1;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v)) {
      throw std::invalid_argument("edge list parse error at line " +
                                  std::to_string(line_no) + ": expected two node ids");
    }
    long long extra;
    if (ls >> extra) {
      throw std::invalid_argument("edge list parse error at line " +
                                  std::to_string(line_no) + ": trailing token");
    }
    if (u < 0 || v < 0) {
      throw std::invalid_argument("edge list parse error at line " +
                                  std::to_string(line_no) + ": negative node id");
    }
    if (u == v) {
      throw std::invalid_argument("edge list validation error at line " +
                                  std::to_string(line_no) + ": self-loop " +
                                  std::to_string(u));
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }
  const int n = std::max(max_id + 1, min_node_count);
  return Graph::from_edges(n, edges);
}

Graph load_edge_list_file(const std::string& path, int min_node_count) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge list: " + path);
  return load_edge_list(in, min_node_count);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& [u, v] : g.edges()) {
    out << u << ' ' << v << '\n';
  }
}

void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  save_edge_list(g, out);
}

Graph largest_connected_component(const Graph& g, std::vector<int>* original_ids) {
  const int n = g.node_count();
  std::vector<int> comp(n, -1);
  int comp_count = 0;
  std::vector<int> comp_size;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int size = 0;
    std::deque<int> queue{s};
    comp[s] = comp_count;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      ++size;
      for (int u : g.neighbors(v)) {
        if (comp[u] < 0) {
          comp[u] = comp_count;
          queue.push_back(u);
        }
      }
    }
    comp_size.push_back(size);
    ++comp_count;
  }
  // components are discovered in order of their smallest node id, so the
  // first maximum also realizes the tie-break rule
  int best = 0;
  for (int c = 1; c < comp_count; ++c) {
    if (comp_size[c] > comp_size[best]) best = c;
  }
  std::vector<int> remap(n, -1);
  std::vector<int> keep;
  for (int v = 0; v < n; ++v) {
    if (comp[v] == best) {
      remap[v] = static_cast<int>(keep.size());
      keep.push_back(v);
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges()) {
    if (remap[u] >= 0 && remap[v] >= 0) edges.emplace_back(remap[u], remap[v]);
  }
  if (original_ids) *original_ids = keep;
  return Graph::from_edges(static_cast<int>(keep.size()), edges);
}

long long count_triangles(const Graph& g) {
  // sum over edges (u<v) of |N(u) inter N(v)|, each triangle counted 3x
  long long total = 0;
  const int n = g.node_count();
  for (int u = 0; u < n; ++u) {
    for (int v : g.neighbors(u)) {
      if (v <= u) continue;
      const auto& a = g.neighbors(u);
      const auto& b = g.neighbors(v);
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
          ++i;
        } else if (a[i] > b[j]) {
          ++j;
        } else {
          ++total;
          ++i;
          ++j;
        }
      }
    }
  }
  return total / 3;
}

ClusteringResult clustering_coefficients(const Graph& g) {
  const int n = g.node_count();
  ClusteringResult res;
  res.per_node.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    const int deg = g.degree(v);
    if (deg <= 1) continue;
    const auto& nb = g.neighbors(v);
    long long closed = 0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (g.has_edge(nb[i], nb[j])) ++closed;
      }
    }
    res.per_node[v] = 2.0 * static_cast<double>(closed) /
                      (static_cast<double>(deg) * (deg - 1));
  }
  if (n > 0) {
    double sum = 0.0;
    for (double c : res.per_node) sum += c;
    res.average = sum / n;
  }
  return res;
}

long long JddHistogram::edge_mass() const {
  long long mass = 0;
  for (const auto& [key, p] : weighted) {
    const long long mu = key.first == key.second ? 1 : 2;
    mass += p / mu;
  }
  return mass;
}

JddHistogram jdd(const Graph& g) {
  JddHistogram hist;
  for (const auto& [u, v] : g.edges()) {
    int k1 = g.degree(u), k2 = g.degree(v);
    if (k1 > k2) std::swap(k1, k2);
    const long long mu = k1 == k2 ? 1 : 2;
    hist.weighted[{k1, k2}] += mu;
  }
  return hist;
}

}  // namespace embrecon
