#include <cmath>

#include "herzlab/dilation.hpp"
#include "herzlab/exponent.hpp"
#include "herzlab/io.hpp"
#include "herzlab/synth.hpp"
#include "herzlab/varlebesgue.hpp"
#include "support.hpp"

using namespace herzlab;

namespace {

const Dilation kD = Dilation::make(parse_matrix("2"));
const Grid kG{1, 2.0, 1024};

GridFunction two_level(double inner, double outer) {
  return GridFunction::sample(kG, [&](const Point& x) {
    if (x[0] < 0.0) return 0.0;
    return x[0] < 1.0 ? inner : outer;
  });
}

}  // namespace

TEST_CASE("two-piece exponent example") {
  // 1/l^2 + 1/l^4 = 1, so l^-2 is the golden ratio conjugate.
  const double v = luxemburg_norm(box_indicator(kG, 0.0, 2.0), ExponentFunction::step(1.0, 2.0, 4.0));
  CHECK(v == doctest::Approx(1.2720196495140690).epsilon(1e-10));
}

TEST_CASE("mixed-value step example") {
  // (3/l)^1.5 + (1/l)^3 = 1
  const double v = luxemburg_norm(two_level(3.0, 1.0), ExponentFunction::step(1.0, 1.5, 3.0));
  CHECK(v == doctest::Approx(3.0710971664918563).epsilon(1e-10));
}

TEST_CASE("constant exponent is the Lebesgue norm") {
  const GridFunction f = two_level(2.0, 1.0);
  for (double p : {1.0, 1.5, 2.0, 7.0}) {
    CAPTURE(p);
    CHECK(luxemburg_norm(f, ExponentFunction::constant(p)) ==
          doctest::Approx(std::pow(std::pow(2.0, p) + 1.0, 1.0 / p)).epsilon(1e-12));
  }
  CHECK(luxemburg_norm(GridFunction::zeros(kG), ExponentFunction::constant(2.0)) == 0.0);
}

TEST_CASE("modular preconditions") {
  CHECK_THROWS_CODE(modular(two_level(1, 1), 0.0, ExponentFunction::constant(2.0)), NonPositiveLambda);
  CHECK_THROWS_CODE(modular(two_level(1, 1), -1.0, ExponentFunction::constant(2.0)), NonPositiveLambda);
  std::vector<unsigned char> mask(kG.size(), 0);
  CHECK(modular(two_level(1, 1), 1.0, ExponentFunction::constant(2.0), mask) == 0.0);
}

TEST_CASE("extreme magnitudes stay finite") {
  const auto p = ExponentFunction::log_family(1.2, 6.0);
  for (double s : {1e-150, 1e150}) {
    const double v = luxemburg_norm(two_level(1.0, 0.5).scaled(s), p);
    CHECK(std::isfinite(v));
    CHECK(v / s == doctest::Approx(luxemburg_norm(two_level(1.0, 0.5), p)).epsilon(1e-9));
  }
}

TEST_CASE("property: norm axioms for a log-Hoelder exponent") {
  auto rng = test_rng(10);
  const auto p = ExponentFunction::log_family(1.5, 3.0);
  std::uniform_real_distribution<double> c(-5.0, 5.0);
  for (int i = 0; i < 60; ++i) {
    const GridFunction f = random_test_function(kD, kG, rng);
    const GridFunction g = random_test_function(kD, kG, rng);
    const double nf = luxemburg_norm(f, p), ng = luxemburg_norm(g, p);
    REQUIRE(modular(f, nf, p) == doctest::Approx(1.0).epsilon(1e-9));
    const double s = c(rng);
    REQUIRE(luxemburg_norm(f.scaled(s), p) == doctest::Approx(std::fabs(s) * nf).epsilon(1e-9));
    REQUIRE(luxemburg_norm(f + g, p) <= (nf + ng) * (1.0 + 1e-9));
    REQUIRE(luxemburg_norm(f.abs(), p) == nf);
  }
}

TEST_CASE("property: generalised Hoelder with r_p") {
  auto rng = test_rng(11);
  for (const auto& p : {ExponentFunction::constant(3.0), ExponentFunction::log_family(1.5, 4.0),
                        ExponentFunction::step(0.5, 2.0, 1.25)}) {
    CAPTURE(p.describe());
    for (int i = 0; i < 100; ++i) {
      REQUIRE(holder_defect(random_test_function(kD, kG, rng), random_test_function(kD, kG, rng), p) >= -1e-6);
    }
  }
  CHECK(holder_constant(ExponentFunction::constant(3.0)) == 1.0);
  CHECK(holder_constant(ExponentFunction::step(1.0, 2.0, 4.0)) == doctest::Approx(1.25));
  CHECK_THROWS_CODE(holder_defect(two_level(1, 1), two_level(1, 1), ExponentFunction::constant(1.0)), NotInClassP);
}

TEST_CASE("ball norm product identity for constant p") {
  const Grid g{1, 8.0, 4096};
  for (double p : {1.5, 2.0, 4.0}) {
    for (int k = -3; k <= 3; ++k) {
      CAPTURE(p);
      CAPTURE(k);
      const auto r = ball_norm_product(kD, g, k, ExponentFunction::constant(p));
      CHECK(r.product == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.product_exact == doctest::Approx(1.0).epsilon(1e-3));
      CHECK(r.exact_measure == std::pow(2.0, k));
    }
  }
  CHECK_THROWS_CODE(ball_norm_product(kD, Grid{1, 8.0, 64}, -12, ExponentFunction::constant(2.0)), EmptyBall);
}

TEST_CASE("subset ratio exponents") {
  const Grid g{1, 8.0, 4096};
  const auto fit = subset_ratio_fit(kD, g, ExponentFunction::constant(4.0), -3, 3);
  CHECK(fit.delta1 == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(fit.delta2 == doctest::Approx(0.75).epsilon(1e-3));
  CHECK(fit.pairs == 21);
  CHECK_THROWS_CODE(subset_ratio_fit(kD, g, ExponentFunction::constant(2.0), 0, 1), InsufficientRange);
}

TEST_CASE("product norm inequality") {
  auto rng = test_rng(12);
  const auto q = ExponentFunction::log_family(3.0, 4.0);
  const auto r = ExponentFunction::constant(6.0);
  for (int i = 0; i < 50; ++i) {
    const auto rep = product_norm_check(random_test_function(kD, kG, rng), random_test_function(kD, kG, rng), q, r);
    REQUIRE(rep.pass);
    REQUIRE(rep.ratio <= rep.bound);
  }
  const auto z = product_norm_check(GridFunction::zeros(kG), two_level(1, 1), q, r);
  CHECK(z.degenerate);
  CHECK(z.pass);
  CHECK_THROWS_CODE(product_norm_check(two_level(1, 1), two_level(1, 1), ExponentFunction::constant(2.0),
                                       ExponentFunction::constant(2.0)),
                    ReciprocalMismatch);
}

TEST_CASE("log-Hoelder detection") {
  std::vector<Point> pts;
  for (int i = -200; i <= 200; ++i) pts.push_back({i / 50.0, 0.0});
  const auto smooth = log_holder_check(ExponentFunction::log_family(2.0, 3.0), pts);
  CHECK(smooth.pass);
  REQUIRE(smooth.analytic_constant);
  CHECK(smooth.origin_constant <= *smooth.analytic_constant * (1.0 + 1e-9));
  const auto jump = log_holder_check(ExponentFunction::step(1.0, 2.0, 4.0), pts);
  CHECK_FALSE(jump.pass);
  CHECK(jump.failure == "NotLogHolder");
  CHECK(log_holder_check(ExponentFunction::constant(2.0), pts).local_constant == 0.0);
}
