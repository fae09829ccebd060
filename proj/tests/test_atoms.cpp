#include <cmath>

#include "herzlab/atoms.hpp"
#include "herzlab/io.hpp"
#include "herzlab/synth.hpp"
#include "support.hpp"

using namespace herzlab;

namespace {

const Dilation kD = Dilation::make(parse_matrix("2"));
const Grid kG{1, 2.0, 4096};

HerzSpaceParams params() {
  HerzSpaceParams hp;
  hp.alpha = ExponentFunction::constant(0.5);
  return hp;
}

}  // namespace

TEST_CASE("mollifier") {
  const Mollifier phi = Mollifier::make(kD);
  CHECK(phi.support_radius() == 0.9);
  CHECK(phi({0.0, 0.0}) > 0.0);
  CHECK(phi({0.46, 0.0}) == 0.0);
  const Grid g{1, 8.0, 4096};
  for (int k = -2; k <= 2; ++k) CHECK(dilate_phi(phi, g, k).integral() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_CODE(dilate_phi(phi, g, -12), UnresolvableScale);
  CHECK_THROWS_CODE(dilate_phi(phi, g, 6), UnresolvableScale);
  const auto [lo, hi] = mollifier_scales(phi, g);
  CHECK(lo <= -2);
  CHECK(hi >= 2);
  CHECK(phi.seminorm_budget(g, 1, 1) > 0.0);
}

TEST_CASE("Haar atom") {
  const Atom a = atom_make(AtomKind::haar, 0, 0, kD, kG, params());
  const auto r0 = atom_validate(a.data, 0, kD, params(), 0);
  CHECK(r0.pass);
  CHECK(r0.support_ok);
  CHECK(r0.norm <= r0.bound * (1.0 + 1e-12));
  const auto r1 = atom_validate(a.data, 0, kD, params(), 1);
  CHECK_FALSE(r1.pass);
  CHECK_FALSE(r1.moments_ok);
  REQUIRE(r1.moments.size() == 2);
  CHECK(r1.moments[1].beta0 == 1);
  CHECK(r1.moments[1].value == doctest::Approx(-0.25).epsilon(1e-8));
  CHECK(std::fabs(r1.moments[0].value) == 0.0);
}

TEST_CASE("corrected bumps pass for every order and scale") {
  for (int k = -2; k <= 2; ++k) {
    for (int s = 0; s <= 4; ++s) {
      CAPTURE(k);
      CAPTURE(s);
      const Atom a = atom_make(AtomKind::bump_corrected, k, s, kD, kG, params());
      const auto r = atom_validate(a.data, k, kD, params(), s);
      REQUIRE(r.pass);
      CHECK(r.norm == doctest::Approx(r.bound).epsilon(1e-9));
    }
  }
  const Dilation d2 = Dilation::make(parse_matrix("2 1; 0 2"));
  for (int s = 0; s <= 2; ++s) {
    CAPTURE(s);
    const Atom a = atom_make(AtomKind::bump_corrected, 0, s, d2, Grid{2, 2.0, 96}, params());
    CHECK(atom_validate(a.data, 0, d2, params(), s).pass);
  }
}

TEST_CASE("atom preconditions") {
  CHECK_THROWS_CODE(atom_make(AtomKind::bump_corrected, 0, 5, kD, kG, params()), IllConditioned);
  CHECK_THROWS_CODE(atom_make(AtomKind::bump_corrected, 0, -1, kD, kG, params()), BadParams);
  CHECK_THROWS_CODE(atom_make(AtomKind::bump_corrected, -14, 0, kD, kG, params()), EmptyBall);
  // Support outside B_k fails the support condition.
  CHECK_FALSE(atom_validate(ball_indicator(kD, kG, 1), 0, kD, params(), 0).support_ok);
  const Atom a = atom_make(AtomKind::haar, -1, 0, kD, kG, params());
  CHECK_FALSE(atom_validate(a.data, -1, kD, params(), 0, true).pass);
}

TEST_CASE("far field size condition") {
  const Atom haar = atom_make(AtomKind::haar, 0, 0, kD, kG, params());
  const auto h = size_condition_check(parse_operator("hardy"), haar, kD);
  CHECK(h.exact_zero);
  CHECK(h.constant == 0.0);
  CHECK(h.points > 0);
  CHECK(h.pass);
  const auto id = size_condition_check(OperatorSpec{}, haar, kD);
  CHECK(id.constant == 0.0);
  for (int s = 0; s <= 4; ++s) {
    const Atom bump = atom_make(AtomKind::bump_corrected, -1, s, kD, kG, params());
    CHECK(size_condition_check(parse_operator("hardy"), bump, kD).exact_zero);
  }
  const Dilation d2 = Dilation::make(parse_matrix("2 1; 0 2"));
  const Atom bump2 = atom_make(AtomKind::bump_corrected, 0, 2, d2, Grid{2, 4.0, 96}, params());
  CHECK(size_condition_check(parse_operator("hardy"), bump2, d2).exact_zero);
  Atom biased = haar;
  biased.data = haar.data + ball_indicator(kD, kG, 0).scaled(0.1);
  CHECK_THROWS_CODE(size_condition_check(parse_operator("hardy"), biased, kD), NonZeroMean);
}

TEST_CASE("atomic sums") {
  const Grid g{1, 4.0, 1024};
  const Mollifier phi = Mollifier::make(kD);
  std::vector<Atom> atoms{atom_make(AtomKind::bump_corrected, -1, 1, kD, g, params()),
                          atom_make(AtomKind::bump_corrected, 0, 0, kD, g, params())};
  const auto r = atomic_sum_check(atoms, {1.0, -0.5}, kD, params(), phi);
  CHECK(std::isfinite(r.ratio));
  CHECK(r.ratio > 0.0);
  const auto r2 = atomic_sum_check(atoms, {3.0, -1.5}, kD, params(), phi);
  CHECK(r2.ratio == doctest::Approx(r.ratio).epsilon(1e-9));
  const auto z = atomic_sum_check(atoms, {0.0, 0.0}, kD, params(), phi);
  CHECK(z.degenerate);
  CHECK_THROWS_CODE(atomic_sum_check({}, {}, kD, params(), phi), InvalidAtom);
  Atom bad = atoms[0];
  bad.data = ball_indicator(kD, g, 2);
  CHECK_THROWS_CODE(atomic_sum_check({bad}, {1.0}, kD, params(), phi), InvalidAtom);
}

TEST_CASE("radial maximal function") {
  const Grid g{1, 4.0, 1024};
  const Mollifier phi = Mollifier::make(kD);
  auto rng = test_rng(50);
  const GridFunction f = random_test_function(kD, g, rng);
  const GridFunction m = radial_maximal(f, phi);
  const GridFunction m3 = radial_maximal(f.scaled(-3.0), phi);
  for (std::size_t i = 0; i < g.size(); ++i) {
    REQUIRE(m[i] >= 0.0);
    REQUIRE(m3[i] == doctest::Approx(3.0 * m[i]).scale(1.0));
  }
}
