#include <cmath>

#include "herzlab/dilation.hpp"
#include "herzlab/grid.hpp"
#include "herzlab/io.hpp"
#include "support.hpp"

using namespace herzlab;

namespace {

const char* kMatrices[] = {"2", "2 0; 0 2", "2 1; 0 2", "3 0; 0 2", "0 2; -2 0"};

Point random_point(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> lr(std::log(1e-4), std::log(1e4));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double r = std::exp(lr(rng));
  if (dim == 1) return {u(rng) < 0 ? -r : r, 0.0};
  const double a = u(rng) * 3.14159;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

TEST_CASE("one-dimensional dilation by 2") {
  const Dilation d = Dilation::make(parse_matrix("2"));
  CHECK(d.b() == 2.0);
  CHECK(d.ellipsoid_volume() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.ball_volume(3) == doctest::Approx(8.0));
  CHECK(d.annulus_index({0.6, 0.0}) == 0);
  CHECK(d.annulus_index({0.25, 0.0}) == -1);
  CHECK(d.annulus_index({-0.6, 0.0}) == 0);
  CHECK(d.rho({0.6, 0.0}) == 1.0);
  CHECK(d.rho({0.0, 0.0}) == 0.0);
  CHECK(d.contains({0.49, 0.0}, 0));
  CHECK_FALSE(d.contains({0.51, 0.0}, 0));
}

TEST_CASE("rejects bad matrices") {
  CHECK_THROWS_CODE(Dilation::make(parse_matrix("0.5")), NotExpansive);
  CHECK_THROWS_CODE(Dilation::make(parse_matrix("2 0; 0 1")), NotExpansive);
  CHECK_THROWS_CODE(Dilation::make(parse_matrix("2 0")), NotSquare);
  CHECK_THROWS_CODE(Dilation::make(parse_matrix("2 0 0; 0 2 0; 0 0 2")), BadDim);
  CHECK_THROWS_CODE(Dilation::make(parse_matrix("2")).annulus_index({0.0, 0.0}), OriginQuery);
}

TEST_CASE("ellipsoid has unit volume and nested balls") {
  for (const char* m : kMatrices) {
    CAPTURE(m);
    const Dilation d = Dilation::make(parse_matrix(m));
    CHECK(d.ellipsoid_volume() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.growth_lower_bound() >= d.c_growth() * (1.0 - 1e-12));
    CHECK(d.c_growth() > 1.0);
    CHECK(d.w() >= 0);
  }
}

TEST_CASE("property: rho(Ax) = b rho(x) and rho is even") {
  auto rng = test_rng(1);
  for (const char* m : kMatrices) {
    CAPTURE(m);
    const Dilation d = Dilation::make(parse_matrix(m));
    // b^j is exact in binary only when b is a power of two.
    const bool dyadic = std::exp2(std::round(std::log2(d.b()))) == d.b();
    for (int i = 0; i < 2000; ++i) {
      const Point x = random_point(rng, d.dim());
      REQUIRE(d.annulus_index(d.apply(x)) == d.annulus_index(x) + 1);
      if (dyadic) {
        REQUIRE(d.rho(d.apply(x)) == d.b() * d.rho(x));
      } else {
        REQUIRE(std::fabs(d.rho(d.apply(x)) / (d.b() * d.rho(x)) - 1.0) <= 2.3e-16);
      }
      REQUIRE(d.rho({-x[0], -x[1]}) == d.rho(x));
      const Point y = d.apply_inverse(d.apply(x));
      REQUIRE(std::fabs(y[0] - x[0]) <= 1e-12 * (1.0 + std::fabs(x[0])));
    }
  }
}

TEST_CASE("property: annulus index matches ball membership") {
  auto rng = test_rng(2);
  for (const char* m : kMatrices) {
    CAPTURE(m);
    const Dilation d = Dilation::make(parse_matrix(m));
    for (int i = 0; i < 2000; ++i) {
      const Point x = random_point(rng, d.dim());
      const int j = d.annulus_index(x);
      REQUIRE(d.contains(x, j + 1));
      REQUIRE_FALSE(d.contains(x, j));
      REQUIRE(d.rho(x) == std::pow(d.b(), j));
    }
  }
}

TEST_CASE("property: quasi-triangle inequality with constant b^w") {
  auto rng = test_rng(3);
  for (const char* m : kMatrices) {
    CAPTURE(m);
    const Dilation d = Dilation::make(parse_matrix(m));
    std::vector<std::pair<Point, Point>> pairs;
    for (int i = 0; i < 5000; ++i) pairs.push_back({random_point(rng, d.dim()), random_point(rng, d.dim())});
    const auto r = check_quasi_triangle(d, pairs);
    CHECK(r.pass);
    CHECK(r.max_ratio <= r.bound);
    CHECK(r.bound == std::pow(d.b(), d.w()));
  }
  CHECK_THROWS_CODE(check_quasi_triangle(Dilation::make(parse_matrix("2")), {}), EmptySamples);
}

TEST_CASE("grid measure of balls converges") {
  const Dilation d = Dilation::make(parse_matrix("2 1; 0 2"));
  double prev = 1.0;
  for (int n : {64, 256}) {
    const Grid g{2, 1.7, n};
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < g.size(); ++i) cnt += d.contains(g.center(i), 0) ? 1 : 0;
    const double err = std::fabs(cnt * g.cell_volume() - 1.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("grid function basics") {
  const Grid g{1, 1.0, 4};
  CHECK(g.spacing() == 0.5);
  CHECK(g.center(0)[0] == -0.75);
  const GridFunction f(g, {1.0, -2.0, 3.0, 0.0});
  CHECK(f.integral() == doctest::Approx(1.0));
  CHECK(f.l1_norm() == doctest::Approx(3.0));
  CHECK(f.sup_norm() == 3.0);
  CHECK((f - f).is_zero());
  CHECK_THROWS_CODE(f + GridFunction::zeros(Grid{1, 1.0, 8}), GridMismatch);
  CHECK_THROWS_CODE(GridFunction(g, {1.0}), GridMismatch);
}
