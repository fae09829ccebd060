#include <doctest.h>

#include <cmath>

#include "herzlab/oracles.hpp"

using namespace herzlab;

// Reference values frozen from a 30-digit computation.
TEST_CASE("oracle values") {
  CHECK(oracle::delta_sequence_p1_theta1() == doctest::Approx(1.3210997620156175).epsilon(1e-12));
  CHECK(oracle::grand_seq_dense({1.0}, 1.0, 2.0) == doctest::Approx(1.7453045811977211).epsilon(1e-10));
  CHECK(oracle::grand_seq_dense({1, 2, 3}, 2.0, 1.0) == doctest::Approx(3.4590058916103842).epsilon(1e-10));
  CHECK(oracle::luxemburg_two_piece() == doctest::Approx(1.2720196495140690).epsilon(1e-14));
  CHECK(oracle::luxemburg_pieces({1.0, 1.0}, {3.0, 1.0}, {1.5, 3.0}) ==
        doctest::Approx(3.0710971664918563).epsilon(1e-12));
  CHECK(oracle::constant_herz(2.0, 2.0, 2.0, 1.0, 1.0) == doctest::Approx(0.93423057934192265).epsilon(1e-10));
  // The supremum over truncation levels sits at L = 0 for this data.
  CHECK(oracle::constant_herz_morrey(2.0, 2.0, 2.0, 1.0, 1.0, 0.5) ==
        doctest::Approx(0.93423057934192265).epsilon(1e-10));
}

TEST_CASE("oracle annulus index") {
  CHECK(oracle::annulus_index_1d(2.0, 0.6) == 0);
  CHECK(oracle::annulus_index_1d(2.0, 0.25) == -1);
  CHECK(oracle::annulus_index_1d(2.0, 3.0) == 2);
}
