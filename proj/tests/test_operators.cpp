#include <cmath>

#include "herzlab/io.hpp"
#include "herzlab/operators.hpp"
#include "herzlab/synth.hpp"
#include "support.hpp"

using namespace herzlab;

namespace {

const Dilation kD = Dilation::make(parse_matrix("2"));
const Grid kG{1, 4.0, 512};

HerzSpaceParams params(double alpha, double lambda = 0.0) {
  HerzSpaceParams hp;
  hp.alpha = ExponentFunction::constant(alpha);
  hp.lambda = lambda;
  return hp;
}

}  // namespace

TEST_CASE("operator parsing") {
  CHECK(parse_operator("identity").kind == OperatorKind::identity);
  CHECK(parse_operator("hardy").kind == OperatorKind::hardy);
  const auto r = parse_operator("riesz:0.5");
  CHECK(r.kind == OperatorKind::truncated_riesz);
  CHECK(r.cutoff == 0.5);
  CHECK(parse_operator("maximal-euclid").ball == BallShape::euclidean);
  CHECK_THROWS_CODE(parse_operator("fourier"), ConfigError);
  CHECK(parse_range("0.1:0.3:0.1").size() == 3);
  CHECK(parse_range("1, 2,4") == std::vector<double>{1, 2, 4});
  CHECK_THROWS_CODE(parse_range("0:1:0"), ConfigError);
}

TEST_CASE("Hardy operator of the unit ball") {
  const GridFunction h = hardy_apply(ball_indicator(kD, kG, 0), kD);
  for (std::size_t i = 0; i < kG.size(); ++i) {
    const double rho = kD.rho(kG.center(i));
    if (rho >= 1.0) REQUIRE(h[i] == doctest::Approx(1.0 / rho).epsilon(1e-14));
    REQUIRE(h[i] >= 0.0);
  }
}

TEST_CASE("Hardy operator is exactly zero outside mean-zero data") {
  const GridFunction f = GridFunction::sample(kG, [](const Point& x) {
    return std::fabs(x[0]) < 0.5 ? (x[0] < 0.0 ? 1.0 : -1.0) : 0.0;
  });
  const GridFunction h = hardy_apply(f, kD);
  for (std::size_t i = 0; i < kG.size(); ++i) {
    if (kD.rho(kG.center(i)) >= 1.0) REQUIRE(h[i] == 0.0);
  }
}

TEST_CASE("property: linearity and size bound of the Hardy operator") {
  auto rng = test_rng(40);
  for (int i = 0; i < 20; ++i) {
    const GridFunction f = random_test_function(kD, kG, rng);
    const GridFunction g = random_test_function(kD, kG, rng);
    const GridFunction lhs = hardy_apply(f.scaled(2.0) + g, kD);
    const GridFunction rhs = hardy_apply(f, kD).scaled(2.0) + hardy_apply(g, kD);
    for (std::size_t j = 0; j < kG.size(); ++j) {
      REQUIRE(lhs[j] == doctest::Approx(rhs[j]).epsilon(1e-12).scale(f.sup_norm() + g.sup_norm()));
    }
    REQUIRE(hardy_size_check(f, kD).pass);
  }
}

TEST_CASE("truncated Riesz operator") {
  const double c0 = riesz_min_cutoff(kD, kG);
  CHECK(c0 > 0.0);
  CHECK_THROWS_CODE(truncated_riesz_apply(ball_indicator(kD, kG, 0), kD, c0 / 4.0), CutoffTooSmall);
  auto rng = test_rng(41);
  for (int i = 0; i < 5; ++i) {
    const GridFunction f = random_test_function(kD, kG, rng);
    const auto rep = riesz_kernel_check(f, kD, c0, 50, rng());
    REQUIRE(rep.pass);
    const GridFunction a = truncated_riesz_apply(f.scaled(-3.0), kD, c0);
    const GridFunction b = truncated_riesz_apply(f, kD, c0);
    for (std::size_t j = 0; j < kG.size(); ++j) REQUIRE(a[j] == doctest::Approx(-3.0 * b[j]).scale(1.0));
  }
  // A larger cutoff removes mass: |Tf| only shrinks for nonnegative f.
  const GridFunction f = ball_indicator(kD, kG, 0);
  const GridFunction near = truncated_riesz_apply(f, kD, c0);
  const GridFunction far = truncated_riesz_apply(f, kD, 4.0);
  for (std::size_t j = 0; j < kG.size(); ++j) REQUIRE(far[j] <= near[j] + 1e-12);
}

TEST_CASE("maximal operator") {
  auto rng = test_rng(42);
  for (int i = 0; i < 5; ++i) {
    const GridFunction f = random_test_function(kD, kG, rng);
    const GridFunction m = maximal_apply(f, kD);
    const GridFunction m2 = maximal_apply(f.scaled(-2.0), kD);
    for (std::size_t j = 0; j < kG.size(); ++j) {
      REQUIRE(m[j] >= std::fabs(f[j]));
      REQUIRE(m2[j] == doctest::Approx(2.0 * m[j]));
      REQUIRE(m[j] <= f.sup_norm() * (1.0 + 1e-12));
    }
  }
  const auto kr = maximal_default_krange(kD, kG, BallShape::anisotropic);
  CHECK(kr.first < kr.second);
  // Constants are fixed points away from the boundary.
  const GridFunction one = GridFunction::sample(kG, [](const Point&) { return 1.0; });
  const GridFunction m = maximal_apply(one, kD);
  for (std::size_t j = 0; j < kG.size(); ++j) REQUIRE(m[j] == doctest::Approx(1.0));
}

TEST_CASE("maximal operator in two dimensions") {
  const Dilation d = Dilation::make(parse_matrix("2 1; 0 2"));
  const Grid g{2, 2.0, 32};
  const GridFunction f = ball_indicator(d, g, 0);
  for (auto ball : {BallShape::anisotropic, BallShape::euclidean}) {
    const GridFunction m = maximal_apply(f, d, std::nullopt, ball);
    for (std::size_t j = 0; j < g.size(); ++j) {
      REQUIRE(m[j] >= f[j]);
      REQUIRE(m[j] <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("operator ratios") {
  auto rng = test_rng(43);
  const GridFunction f = random_test_function(kD, kG, rng);
  CHECK(op_ratio(OperatorSpec{}, f, kD, params(0.25)) == 1.0);
  CHECK(op_ratio(OperatorSpec{}, f, kD, params(0.25, 0.05)) == 1.0);
  CHECK(op_ratio(parse_operator("hardy"), f, kD, params(0.25)) > 0.0);
  CHECK_THROWS_CODE(op_ratio(parse_operator("hardy"), GridFunction::zeros(kG), kD, params(0.25)), ZeroFunction);
}

TEST_CASE("boundedness sweep") {
  const Grid g{1, 8.0, 256};
  SweepOptions so;
  so.base = params(0.25);
  so.alphas = {0.1, 0.3, 0.7};
  so.lambdas = {0.0, 0.25};
  so.lambda_relative = true;
  so.small_size = 8;
  const auto fam = scale_family(kD, g, 32, 7);
  const auto t = boundedness_sweep(parse_operator("identity"), kD, fam, so);
  REQUIRE(t.cells.size() == 6);
  for (const auto& c : t.cells) {
    CHECK(c.sup_small == 1.0);
    CHECK(c.sup_large == 1.0);
    CHECK(c.admissible == (c.alpha < 0.5));
  }
  CHECK(t.pass);
  CHECK(t.to_csv().find("alpha") != std::string::npos);
  CHECK(t.to_svg().rfind("<svg", 0) == 0);
  CHECK_THROWS_CODE(boundedness_sweep(parse_operator("identity"), kD, {}, so), EmptyGrid);
  // Smaller families are prefixes of larger ones.
  const auto fam8 = scale_family(kD, g, 8, 7);
  for (std::size_t i = 0; i < fam8.size(); ++i) {
    CHECK(std::equal(fam8[i].values().begin(), fam8[i].values().end(), fam[i].values().begin()));
  }
}
