#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "embrecon/graph.hpp"

namespace embrecon {

struct SamplerConfig {
  double fraction = 0.30;             // target fraction of nodes to expand
  int repetitions = 300;              // sampling repetitions per graph
  double degree_bias_exponent = 1.0;  // frontier choice probability ~ deg^gamma
  int frontier_width = 0;             // max nodes expanded per layer; 0 = ceil(0.1 n)
  std::uint64_t seed = 0;
};

struct DegreeEstimate {
  double mean = 0.0;
  double stddev = 0.0;  // population std over all repetitions
  int samples = 0;
  int k_int = 1;        // round(mean), at least 1
};

// Layered degree-biased expansion: each round draws up to frontier_width
// frontier nodes without replacement with probability proportional to
// degree^gamma, expands them (all incident edges observed), and queues their
// unvisited neighbors. Restarts at a random unvisited node when the frontier
// empties. Returns the expanded node set, sorted.
std::vector<int> exploration_sample(const Graph& g, const SamplerConfig& cfg,
                                    std::uint64_t seed);

// Mean true degree over expanded nodes, one value per (graph, repetition);
// aggregated mean/std over all repetitions with equal weight.
DegreeEstimate estimate_average_degree(std::span<const Graph> reference,
                                       const SamplerConfig& cfg);

}  // namespace embrecon
