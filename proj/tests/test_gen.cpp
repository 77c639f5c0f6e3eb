#include <doctest.h>

#include "embrecon/gen.hpp"

using namespace embrecon;

TEST_CASE("erdos_renyi is seeded and in range") {
  const Graph a = erdos_renyi(50, 0.1, 4);
  const Graph b = erdos_renyi(50, 0.1, 4);
  CHECK(a.edges() == b.edges());
  CHECK(erdos_renyi(50, 0.0, 1).edge_count() == 0);
  CHECK(erdos_renyi(10, 1.0, 1).edge_count() == 45);
}

TEST_CASE("two_block_sbm density split") {
  const Graph g = two_block_sbm(200, 0.2, 0.0, 9);
  // p_inter = 0: no edges across the halves
  for (const auto& [u, v] : g.edges()) {
    CHECK((u < 100) == (v < 100));
  }
  const Graph h = two_block_sbm(40, 1.0, 1.0, 9);
  CHECK(h.edge_count() == 40 * 39 / 2);
}
