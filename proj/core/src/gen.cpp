#include "embrecon/gen.hpp"

#include <stdexcept>

#include "embrecon/rng.hpp"

namespace embrecon {

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1 || p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: bad parameters");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    for (int u = v + 1; u < n; ++u) {
      if (rng.uniform() < p) edges.emplace_back(v, u);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph two_block_sbm(int n, double p_intra, double p_inter, std::uint64_t seed) {
  if (n < 2 || p_intra < 0.0 || p_intra > 1.0 || p_inter < 0.0 || p_inter > 1.0) {
    throw std::invalid_argument("two_block_sbm: bad parameters");
  }
  Rng rng(seed);
  const int half = n / 2;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    for (int u = v + 1; u < n; ++u) {
      const bool same = (v < half) == (u < half);
      if (rng.uniform() < (same ? p_intra : p_inter)) edges.emplace_back(v, u);
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace embrecon
