#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "herzlab/dilation.hpp"
#include "herzlab/grid.hpp"

namespace herzlab {

GridFunction ball_indicator(const Dilation& d, const Grid& grid, int k);
/// chi of C_k = B_k \ B_{k-1}.
GridFunction annulus_indicator(const Dilation& d, const Grid& grid, int k);
/// chi of [a, b) in 1-D, [a, b)^2 in 2-D.
GridFunction box_indicator(const Grid& grid, double a, double b);
/// exp(-1 / (1 - |A^{-k}(x - c)|_Q^2)) on c + B_k, zero elsewhere.
GridFunction smooth_bump(const Dilation& d, const Grid& grid, const Point& center, int k);
/// Independent uniform(-1, 1) samples; reproducible from the seed.
GridFunction seeded_noise(const Grid& grid, std::uint64_t seed);

/// Scales j whose balls are resolved by the grid (min width >= 4 cells) and
/// fit inside the box.
std::pair<int, int> resolvable_scales(const Dilation& d, const Grid& grid);

/// A few random bumps and ball/annulus indicators with random signs and
/// amplitudes, optionally plus noise; used by the property tests.
GridFunction random_test_function(const Dilation& d, const Grid& grid, std::mt19937_64& rng,
                                  bool with_noise = true);

/// Family of dilated and translated seeds (ball and annulus indicators, bumps).
/// Member m depends only on (seed, m), so a smaller family is a prefix of a
/// larger one.
std::vector<GridFunction> scale_family(const Dilation& d, const Grid& grid, std::size_t count,
                                       std::uint64_t seed);

/// Serializable recipe for a synthetic function.
struct FunctionDescriptor {
  std::string kind;  ///< ball, annulus, box, bump, noise
  int k = 0;
  Point center{0.0, 0.0};
  double a = 0.0;
  double b = 0.0;
  std::uint64_t seed = 0;
  double amplitude = 1.0;
};

/// Throws ConfigError for an unknown kind.
GridFunction synthesize(const FunctionDescriptor& desc, const Dilation& d, const Grid& grid);

}  // namespace herzlab
