#include "embrecon/degree_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "embrecon/rng.hpp"

namespace embrecon {

std::vector<int> exploration_sample(const Graph& g, const SamplerConfig& cfg,
                                    std::uint64_t seed) {
  if (!(cfg.fraction > 0.0) || cfg.fraction > 1.0) {
    throw std::invalid_argument("exploration_sample: fraction must be in (0, 1]");
  }
  const int n = g.node_count();
  const int target = std::min<int>(n, static_cast<int>(std::ceil(cfg.fraction * n)));
  const int width = cfg.frontier_width > 0
                        ? cfg.frontier_width
                        : static_cast<int>(std::ceil(0.1 * n));
  const double gamma = cfg.degree_bias_exponent;

  Rng rng(seed);
  std::vector<char> expanded(n, 0), visited(n, 0);
  std::vector<int> frontier, result;
  result.reserve(target);
  std::vector<std::pair<double, int>> scored;

  while (static_cast<int>(result.size()) < target) {
    if (frontier.empty()) {
      // restart in an unvisited part of the graph
      std::vector<int> unvisited;
      for (int v = 0; v < n; ++v) {
        if (!visited[v]) unvisited.push_back(v);
      }
      if (unvisited.empty()) break;
      const int s = unvisited[rng.uniform_int(static_cast<int>(unvisited.size()))];
      visited[s] = 1;
      frontier.push_back(s);
    }
    // degree-biased draw without replacement via perturbed log-weights
    scored.clear();
    scored.reserve(frontier.size());
    for (int v : frontier) {
      const int deg = g.degree(v);
      const double w = deg > 0 ? gamma * std::log(static_cast<double>(deg)) : -1e300;
      scored.emplace_back(w + rng.gumbel(), v);
    }
    const int take = std::min<int>(width, static_cast<int>(scored.size()));
    std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                      [](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first > b.first;
                        return a.second < b.second;
                      });
    std::vector<char> chosen(n, 0);
    for (int i = 0; i < take; ++i) chosen[scored[i].second] = 1;
    std::vector<int> next_frontier;
    next_frontier.reserve(frontier.size());
    for (int v : frontier) {
      if (!chosen[v]) next_frontier.push_back(v);
    }
    for (int i = 0; i < take && static_cast<int>(result.size()) < target; ++i) {
      const int v = scored[i].second;
      expanded[v] = 1;
      result.push_back(v);
      for (int u : g.neighbors(v)) {
        if (!visited[u]) {
          visited[u] = 1;
          next_frontier.push_back(u);
        }
      }
    }
    frontier = std::move(next_frontier);
  }
  std::sort(result.begin(), result.end());
  return result;
}

DegreeEstimate estimate_average_degree(std::span<const Graph> reference,
                                       const SamplerConfig& cfg) {
  if (reference.empty()) {
    throw std::invalid_argument("estimate_average_degree: empty reference list");
  }
  if (cfg.repetitions < 1) {
    throw std::invalid_argument("estimate_average_degree: repetitions must be >= 1");
  }
  std::vector<double> values;
  values.reserve(reference.size() * cfg.repetitions);
  for (std::size_t gi = 0; gi < reference.size(); ++gi) {
    const Graph& g = reference[gi];
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      const std::uint64_t rep_seed =
          cfg.seed + static_cast<std::uint64_t>(gi) * cfg.repetitions + rep;
      const auto nodes = exploration_sample(g, cfg, rep_seed);
      // expanded nodes have every incident edge observed, so their true
      // degree is known exactly
      double sum = 0.0;
      for (int v : nodes) sum += g.degree(v);
      values.push_back(nodes.empty() ? 0.0 : sum / nodes.size());
    }
  }
  DegreeEstimate est;
  est.samples = static_cast<int>(values.size());
  est.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  double var = 0.0;
  for (double v : values) var += (v - est.mean) * (v - est.mean);
  est.stddev = std::sqrt(var / values.size());
  est.k_int = std::max(1, static_cast<int>(std::llround(est.mean)));
  return est;
}

}  // namespace embrecon
