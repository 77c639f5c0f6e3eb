#include <doctest.h>

#include <cmath>

#include "embrecon/attack.hpp"
#include "embrecon/eval.hpp"
#include "embrecon/gen.hpp"
#include "testutil.hpp"

using namespace embrecon;

TEST_CASE("combine hand cases and oracle") {
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Constant(3, 3, 1.0);
  Eigen::MatrixXd a1 = Eigen::MatrixXd::Zero(3, 3);
  CHECK(combine(a0, a1, 1.0) == a1);
  CHECK(combine(a0, a1, 0.5)(0, 1) == doctest::Approx(0.5));

  const Eigen::MatrixXd x = testutil::random_matrix(5, 5, 1);
  const Eigen::MatrixXd y = testutil::random_matrix(5, 5, 2);
  const double eta = 0.3;
  const Eigen::MatrixXd got = combine(x, y, eta);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(got(i, j) ==
            doctest::Approx((1 - eta) * x(i, j) + eta * y(i, j)).epsilon(1e-15));
    }
  }
}

TEST_CASE("clip branch cases, idempotence, symmetry") {
  Eigen::MatrixXd a(1, 3);
  a << 1.7, -0.3, 0.4;
  const Eigen::MatrixXd c = clip_unit(a);
  CHECK(c(0, 0) == 1.0);
  CHECK(c(0, 1) == 0.0);
  CHECK(c(0, 2) == 0.4);

  Eigen::MatrixXd r = testutil::random_matrix(6, 6, 3) * 2.0;
  r = 0.5 * (r + r.transpose());
  const Eigen::MatrixXd once = clip_unit(r);
  CHECK(clip_unit(once) == once);
  CHECK((once - once.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("binarize extremes") {
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(6, 6);
  ones.diagonal().setZero();
  CHECK(binarize_bernoulli(ones, 1).edge_count() == 15);
  CHECK(binarize_bernoulli(Eigen::MatrixXd::Zero(6, 6), 1).edge_count() == 0);
}

TEST_CASE("binarize frequency tracks the entry probability") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 1) = a(1, 0) = 0.3;
  int hits = 0;
  const int draws = 20'000;
  for (int s = 0; s < draws; ++s) {
    hits += binarize_bernoulli(a, 100 + s).edge_count() == 1 ? 1 : 0;
  }
  CHECK(std::abs(hits / static_cast<double>(draws) - 0.3) < 0.01);
}

TEST_CASE("binarize expected edge count within 3 sigma") {
  Eigen::MatrixXd a = testutil::random_matrix(20, 20, 9).array().abs().min(1.0);
  a = Eigen::MatrixXd(0.5 * (a + a.transpose()));
  a.diagonal().setZero();
  double expect = 0.0, var = 0.0;
  for (int v = 0; v < 20; ++v) {
    for (int u = v + 1; u < 20; ++u) {
      expect += a(v, u);
      var += a(v, u) * (1 - a(v, u));
    }
  }
  double mean = 0.0;
  const int reps = 300;
  for (int s = 0; s < reps; ++s) {
    mean += static_cast<double>(binarize_bernoulli(a, 500 + s).edge_count());
  }
  mean /= reps;
  CHECK(std::abs(mean - expect) < 3.0 * std::sqrt(var / reps));
}

TEST_CASE("binarize rejects entries outside [0, 1]") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(3, 3, 1.4);
  CHECK_THROWS_AS(binarize_bernoulli(a, 1), std::invalid_argument);
}

namespace {

// four tight clusters of eight nodes each; within-cluster cosine distance 0
EmbeddingMatrix clustered_embedding() {
  const int per = 8, clusters = 4, d = 8;
  Eigen::MatrixXd rows(per * clusters, d);
  embrecon::Rng rng(11);
  for (int c = 0; c < clusters; ++c) {
    for (int i = 0; i < per; ++i) {
      for (int j = 0; j < d; ++j) {
        rows(c * per + i, j) = (j == c ? 1.0 : 0.0) + 0.01 * rng.normal();
      }
    }
  }
  return {rows, false};
}

}  // namespace

TEST_CASE("degenerate configuration reproduces the seed graph") {
  // T=1, eta=1, no metric steps, frozen theta chosen so that the decoder
  // saturates within clusters: the output must keep the seed's edges
  const EmbeddingMatrix h = clustered_embedding();
  AttackConfig cfg;
  cfg.k = 4;
  cfg.tau = 50.0;  // concentrated sampling: seed stays within clusters
  cfg.eta = 1.0;
  cfg.iterations = 1;
  cfg.metric.steps = 0;
  cfg.gae.lr = 0.0;  // theta frozen
  cfg.gae.theta0 = Eigen::MatrixXd(8.0 * Eigen::MatrixXd::Identity(8, 8));
  cfg.seed = 4;

  const auto res = run_attack(h, cfg);
  // the seed graph is reproducible from the same sub-seed path
  const auto p0 = edge_probabilities(h, MetricHeads::ones(1, 8), cfg.tau);
  const Graph seed = gumbel_topk_graph(p0, cfg.k, mix_seed(cfg.seed, 1));
  std::size_t kept = 0;
  for (const auto& [u, v] : seed.edges()) {
    if (res.graph.has_edge(u, v)) ++kept;
  }
  CHECK(static_cast<double>(kept) / seed.edge_count() >= 0.9);
}

TEST_CASE("run_attack is deterministic in the seed") {
  const Graph g = two_block_sbm(60, 0.25, 0.02, 31);
  EmbeddingMatrix h;
  h.rows = testutil::random_matrix(60, 8, 32);
  AttackConfig cfg;
  cfg.k = 5;
  cfg.iterations = 3;
  cfg.metric.steps = 2;
  cfg.seed = 77;
  const auto a = run_attack(h, cfg);
  const auto b = run_attack(h, cfg);
  CHECK(a.graph.edges() == b.graph.edges());
  REQUIRE(a.trace.iterations.size() == b.trace.iterations.size());
  for (std::size_t i = 0; i < a.trace.iterations.size(); ++i) {
    CHECK(a.trace.iterations[i].loss_total == b.trace.iterations[i].loss_total);
    CHECK(a.trace.iterations[i].edges == b.trace.iterations[i].edges);
  }
  AttackConfig other = cfg;
  other.seed = 78;
  const auto c = run_attack(h, other);
  CHECK(a.graph.edges() != c.graph.edges());
}

TEST_CASE("attack trace records one entry per iteration") {
  EmbeddingMatrix h;
  h.rows = testutil::random_matrix(30, 6, 1);
  AttackConfig cfg;
  cfg.k = 3;
  cfg.iterations = 4;
  cfg.metric.steps = 1;
  cfg.seed = 5;
  const auto res = run_attack(h, cfg);
  REQUIRE(res.trace.iterations.size() == 4);
  for (int t = 0; t < 4; ++t) {
    CHECK(res.trace.iterations[t].iteration == t);
    CHECK(std::isfinite(res.trace.iterations[t].loss_total));
  }
}

TEST_CASE("attack failures carry the iteration index and trace") {
  EmbeddingMatrix h;
  h.rows = testutil::random_matrix(20, 4, 2);
  AttackConfig cfg;
  cfg.k = 3;
  cfg.iterations = 5;
  cfg.metric.steps = 0;
  cfg.gae.lr = 1e30;  // blows the decoder into a saturated, empty-row state
  cfg.seed = 6;
  try {
    run_attack(h, cfg);
    // some instances may survive saturation; nothing to assert then
  } catch (const AttackError& e) {
    CHECK(e.iteration >= 0);
    CHECK(e.trace.iterations.size() <= 5);
    CHECK(std::string(e.what()).find("iteration") != std::string::npos);
  }
}

TEST_CASE("attack validates configuration") {
  EmbeddingMatrix h;
  h.rows = testutil::random_matrix(10, 3, 3);
  AttackConfig cfg;
  cfg.k = 0;
  CHECK_THROWS_AS(run_attack(h, cfg), std::invalid_argument);
  cfg.k = 10;
  CHECK_THROWS_AS(run_attack(h, cfg), std::invalid_argument);
  cfg.k = 2;
  cfg.eta = 0.0;
  CHECK_THROWS_AS(run_attack(h, cfg), std::invalid_argument);
}

TEST_CASE("ablation is deterministic and traces its steps") {
  EmbeddingMatrix h;
  h.rows = testutil::random_matrix(40, 6, 9);
  AttackConfig cfg;
  cfg.k = 4;
  cfg.iterations = 6;
  cfg.seed = 12;
  const auto a = run_attack_ablation_no_gml(h, cfg);
  const auto b = run_attack_ablation_no_gml(h, cfg);
  CHECK(a.graph.edges() == b.graph.edges());
  CHECK(a.trace.iterations.size() == 6);
}

TEST_CASE("early stop halts on a stalled loss") {
  EmbeddingMatrix h;
  h.rows = testutil::random_matrix(25, 5, 4);
  AttackConfig cfg;
  cfg.k = 3;
  cfg.iterations = 60;
  cfg.metric.steps = 0;
  cfg.gae.lr = 0.0;  // loss can never improve
  cfg.early_stop = true;
  cfg.early_stop_patience = 5;
  cfg.seed = 3;
  const auto res = run_attack(h, cfg);
  CHECK(res.trace.iterations.size() < 60);
}
