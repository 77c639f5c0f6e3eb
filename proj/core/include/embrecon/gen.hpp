#pragma once

#include <cstdint>

#include "embrecon/graph.hpp"

namespace embrecon {

// G(n, p): each pair (v < u) kept independently with probability p,
// drawn in row-major pair order from the seeded stream.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

// Two equal blocks (sizes n/2 and n - n/2); pair probability p_intra within
// a block, p_inter across. Same pair order convention as erdos_renyi.
Graph two_block_sbm(int n, double p_intra, double p_inter, std::uint64_t seed);

}  // namespace embrecon
