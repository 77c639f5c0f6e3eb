#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "embrecon/fixtures.hpp"
#include "embrecon/gen.hpp"
#include "testutil.hpp"

using namespace embrecon;

TEST_CASE("top_eigenpairs matches a dense solver on a random symmetric matrix") {
  Eigen::MatrixXd m = testutil::random_matrix(40, 40, 6);
  m = 0.5 * (m + m.transpose());
  const EigenPairs pairs = top_eigenpairs(m, 5, EigenOrder::Magnitude, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  std::vector<double> by_mag(es.eigenvalues().data(),
                             es.eigenvalues().data() + 40);
  std::sort(by_mag.begin(), by_mag.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  for (int j = 0; j < 5; ++j) {
    CHECK(pairs.values(j) == doctest::Approx(by_mag[j]).epsilon(1e-7));
    const double resid = (m * pairs.vectors.col(j) -
                          pairs.values(j) * pairs.vectors.col(j))
                             .norm();
    CHECK(resid < 1e-7 * std::abs(by_mag[0]));
  }
}

TEST_CASE("spectral embedding of K_n at d=1 is the constant Perron column") {
  const EmbeddingMatrix h = spectral_embedding(testutil::complete_graph(7), 1, 3);
  for (int v = 1; v < 7; ++v) {
    CHECK(h.rows(v, 0) == doctest::Approx(h.rows(0, 0)).epsilon(1e-8));
  }
  CHECK(h.rows(0, 0) > 0.0);  // sign convention
}

TEST_CASE("spectral embedding separates two disjoint cliques at d=2") {
  // K5 + K5, disconnected: rows collapse to two distinct points
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 5; ++u) {
    for (int v = u + 1; v < 5; ++v) {
      edges.emplace_back(u, v);
      edges.emplace_back(u + 5, v + 5);
    }
  }
  const Graph g = Graph::from_edges(10, edges);
  const EmbeddingMatrix h = spectral_embedding(g, 2, 5);
  for (int v = 1; v < 5; ++v) {
    CHECK((h.rows.row(v) - h.rows.row(0)).norm() < 1e-6);
    CHECK((h.rows.row(v + 5) - h.rows.row(5)).norm() < 1e-6);
  }
  CHECK((h.rows.row(0) - h.rows.row(5)).norm() > 0.1);
}

TEST_CASE("spectral eigenvalues of C8 match the closed form") {
  // normalized adjacency of C8 is (A + I)/3: eigenvalues (1 + 2cos(2 pi j/8))/3
  Eigen::VectorXd values;
  spectral_embedding(testutil::cycle_graph(8), 2, 11, &values);
  CHECK(values(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(values(1) ==
        doctest::Approx((1.0 + 2.0 * std::cos(2.0 * M_PI / 8)) / 3.0).epsilon(1e-8));
}

TEST_CASE("spectral embedding rejects d >= n") {
  CHECK_THROWS_AS(spectral_embedding(testutil::cycle_graph(5), 5, 1),
                  std::invalid_argument);
}

TEST_CASE("spectral embedding is deterministic in the seed") {
  const Graph g = erdos_renyi(40, 0.2, 2);
  const auto a = spectral_embedding(g, 6, 9);
  const auto b = spectral_embedding(g, 6, 9);
  CHECK(a.rows == b.rows);
}

TEST_CASE("rw_pmi co-occurrence with walk_length 1 is supported on edges only") {
  const Graph g = erdos_renyi(25, 0.15, 4);
  RwPmiConfig cfg;
  cfg.walk_length = 1;
  cfg.window = 3;
  cfg.walks_per_node = 5;
  const Eigen::MatrixXd counts = rw_cooccurrence(g, cfg, 17);
  const Eigen::MatrixXd ppmi = ppmi_matrix(counts);
  for (int u = 0; u < g.node_count(); ++u) {
    for (int v = 0; v < g.node_count(); ++v) {
      if (u != v && !g.has_edge(u, v)) {
        CHECK(counts(u, v) == 0.0);
        CHECK(ppmi(u, v) == 0.0);
      }
    }
  }
}

TEST_CASE("rw_pmi embedding clusters two far-apart cliques") {
  // two K6 cliques joined by a single bridge edge
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 6; ++u) {
    for (int v = u + 1; v < 6; ++v) {
      edges.emplace_back(u, v);
      edges.emplace_back(u + 6, v + 6);
    }
  }
  edges.emplace_back(5, 6);
  const Graph g = Graph::from_edges(12, edges);
  const EmbeddingMatrix h = rw_pmi_embedding(g, 4, {8, 12, 3}, 21);
  auto cosine = [&](int a, int b) {
    return h.rows.row(a).dot(h.rows.row(b)) /
           (h.rows.row(a).norm() * h.rows.row(b).norm());
  };
  double intra = 0.0, inter = 0.0;
  int ni = 0, nx = 0;
  for (int a = 0; a < 12; ++a) {
    for (int b = a + 1; b < 12; ++b) {
      if ((a < 6) == (b < 6)) {
        intra += cosine(a, b);
        ++ni;
      } else {
        inter += cosine(a, b);
        ++nx;
      }
    }
  }
  CHECK(intra / ni > inter / nx);
}

TEST_CASE("rw_pmi embedding is bit-identical across runs with one seed") {
  const Graph g = erdos_renyi(30, 0.2, 8);
  const auto a = rw_pmi_embedding(g, 5, {4, 10, 3}, 33);
  const auto b = rw_pmi_embedding(g, 5, {4, 10, 3}, 33);
  CHECK(a.rows == b.rows);
}

TEST_CASE("fixture contract: cosine similarity is a strong edge classifier on SBM") {
  const Graph g = two_block_sbm(160, 0.12, 0.01, 14);
  auto score_of = [](const EmbeddingMatrix& h) {
    Eigen::MatrixXd rows = h.rows;
    for (int v = 0; v < rows.rows(); ++v) {
      const double norm = rows.row(v).norm();
      if (norm > 0) rows.row(v) /= norm;
    }
    return Eigen::MatrixXd(rows * rows.transpose());
  };
  const auto spec = spectral_embedding(g, 24, 3);
  CHECK(testutil::edge_auc(g, score_of(spec)) > 0.8);
  const auto pmi = rw_pmi_embedding(g, 24, {6, 20, 4}, 3);
  CHECK(testutil::edge_auc(g, score_of(pmi)) > 0.8);
}
