#include <cmath>

#include "herzlab/grandseq.hpp"
#include "herzlab/oracles.hpp"
#include "support.hpp"

using namespace herzlab;

TEST_CASE("delta sequence") {
  const Sequence e0{0, {1.0}};
  const auto r = grand_seq_sup(e0, {.p = 1.0, .theta = 1.0});
  CHECK(r.value == doctest::Approx(1.3210997620156175).epsilon(1e-9));
  CHECK(r.argmax_eps == doctest::Approx(3.5911214766686221).epsilon(1e-6));
  CHECK_FALSE(r.at_limit);
  CHECK(grand_seq_norm(e0, {.p = 1.0, .theta = 2.0}) == doctest::Approx(1.7453045811977211).epsilon(1e-9));
}

TEST_CASE("frozen finite sequences") {
  CHECK(grand_seq_norm({0, {1, 2, 3}}, {.p = 2.0, .theta = 1.0}) == doctest::Approx(3.4590058916103842).epsilon(1e-9));
  CHECK(grand_seq_norm({0, {1, 2, 3}}, {.p = 3.0, .theta = 2.0}) == doctest::Approx(3.6129856152526215).epsilon(1e-9));
  CHECK(grand_seq_norm({-4, {0.5, -0.25}}, {.p = 1.0, .theta = 0.5}) ==
        doctest::Approx(0.58412854930090246).epsilon(1e-9));
}

TEST_CASE("lp norm and preconditions") {
  CHECK(lp_seq_norm({0, {3.0, 4.0}}, 2.0) == doctest::Approx(5.0));
  CHECK(lp_seq_norm({0, {3.0, -4.0}}, INFINITY) == 4.0);
  CHECK_THROWS_CODE(lp_seq_norm({0, {1.0}}, 0.5), BadExponent);
  CHECK_THROWS_CODE(grand_seq_norm({0, {1.0}}, {.p = 0.5, .theta = 1.0}), BadParams);
  CHECK_THROWS_CODE(grand_seq_norm({0, {1.0}}, {.p = 1.0, .theta = 0.0}), BadParams);
  CHECK(grand_seq_norm({0, {0.0, 0.0}}, {.p = 1.0, .theta = 1.0}) == 0.0);
}

TEST_CASE("index sets restrict the active entries") {
  const Sequence x{-2, {5.0, 4.0, 1.0, 2.0}, IndexSet::nonnegative};
  CHECK(x.active() == std::vector<double>{1.0, 2.0});
  const Sequence y{-2, {5.0, 4.0, 1.0, 2.0}, IndexSet::positive};
  CHECK(y.active() == std::vector<double>{2.0});
  CHECK(grand_seq_norm(x, {.p = 1.0, .theta = 1.0}) == grand_seq_norm({0, {1.0, 2.0}}, {.p = 1.0, .theta = 1.0}));
}

TEST_CASE("property: agreement with the dense oracle") {
  auto rng = test_rng(20);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_real_distribution<double> lm(-5.0, 5.0);
  for (double p : {1.0, 2.0, 3.0}) {
    for (double th : {0.5, 1.0, 2.0}) {
      for (int i = 0; i < 8; ++i) {
        std::vector<double> x(static_cast<std::size_t>(len(rng)));
        for (double& v : x) v = std::exp(lm(rng));
        CAPTURE(p);
        CAPTURE(th);
        REQUIRE(grand_seq_sup(x, {.p = p, .theta = th}).value ==
                doctest::Approx(oracle::grand_seq_dense(x, p, th)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("property: homogeneity, permutation and monotonicity") {
  auto rng = test_rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const GrandSequenceParams gp{.p = 1.5, .theta = 0.7};
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x(8);
    for (double& v : x) v = u(rng);
    const double n = grand_seq_norm({0, x}, gp);
    auto y = x;
    for (double& v : y) v *= -2.5;
    REQUIRE(grand_seq_norm({0, y}, gp) == doctest::Approx(2.5 * n).epsilon(1e-10));
    std::shuffle(y.begin(), y.end(), rng);
    REQUIRE(grand_seq_norm({3, y}, gp) == doctest::Approx(2.5 * n).epsilon(1e-10));
    auto z = x;
    z[static_cast<std::size_t>(i) % z.size()] = 0.0;
    REQUIRE(grand_seq_norm({0, z}, gp) <= n * (1.0 + 1e-12));
    REQUIRE(n >= lp_seq_norm({0, x}, INFINITY));
  }
}

TEST_CASE("property: nesting chain") {
  auto rng = test_rng(22);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x(10);
    for (double& v : x) v = u(rng);
    const auto r = nesting_report({0, x}, 2.0, 0.5, 1.5, 0.3, 0.4);
    REQUIRE(r.pass);
    for (int l = 0; l < 4; ++l) {
      if (r.bounds[l]) REQUIRE(r.ratios[l] <= *r.bounds[l] * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("golden section maximiser") {
  const double x = golden_max([](double t) { return -(t - 0.3) * (t - 0.3); }, -1.0, 2.0, 1e-10);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-8));
}
