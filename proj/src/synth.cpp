#include "herzlab/synth.hpp"

#include <algorithm>
#include <cmath>

#include "herzlab/error.hpp"

namespace herzlab {

GridFunction ball_indicator(const Dilation& d, const Grid& grid, int k) {
  return GridFunction::sample(grid, [&](const Point& x) { return d.contains(x, k) ? 1.0 : 0.0; });
}

GridFunction annulus_indicator(const Dilation& d, const Grid& grid, int k) {
  return GridFunction::sample(
      grid, [&](const Point& x) { return d.contains(x, k) && !d.contains(x, k - 1) ? 1.0 : 0.0; });
}

GridFunction box_indicator(const Grid& grid, double a, double b) {
  return GridFunction::sample(grid, [&](const Point& x) {
    const bool in0 = x[0] >= a && x[0] < b;
    const bool in1 = grid.dim == 1 || (x[1] >= a && x[1] < b);
    return in0 && in1 ? 1.0 : 0.0;
  });
}

GridFunction smooth_bump(const Dilation& d, const Grid& grid, const Point& center, int k) {
  const Eigen::MatrixXd form = d.ball_form(k);
  return GridFunction::sample(grid, [&](const Point& x) {
    const double u = x[0] - center[0];
    const double v = grid.dim == 1 ? 0.0 : x[1] - center[1];
    const double r2 = grid.dim == 1 ? form(0, 0) * u * u
                                    : form(0, 0) * u * u + 2.0 * form(0, 1) * u * v + form(1, 1) * v * v;
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
  });
}

GridFunction seeded_noise(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(grid.size());
  for (double& x : v) x = u(rng);
  return GridFunction(grid, std::move(v));
}

std::pair<int, int> resolvable_scales(const Dilation& d, const Grid& grid) {
  const double h = grid.spacing();
  int lo = 0;
  while (d.ball_min_width(lo) >= 4.0 * h) --lo;
  while (d.ball_min_width(lo) < 4.0 * h) ++lo;
  int hi = lo;
  while (0.5 * d.ball_diameter(hi + 1) <= grid.half_width) ++hi;
  return {lo, hi};
}

namespace {

Point random_center(const Dilation& d, int j, std::mt19937_64& rng, double limit, int dim) {
  // A point of B_{j} scaled into the box, so c + B_j mostly stays inside.
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double r = std::min(0.5 * d.ball_diameter(j), limit);
  return {u(rng) * r, dim == 2 ? u(rng) * r : 0.0};
}

}  // namespace

GridFunction random_test_function(const Dilation& d, const Grid& grid, std::mt19937_64& rng,
                                  bool with_noise) {
  const auto [lo, hi] = resolvable_scales(d, grid);
  std::uniform_int_distribution<int> scale(lo, std::max(lo, hi - 1));
  std::uniform_int_distribution<int> pieces(1, 3);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  std::vector<double> v(grid.size(), 0.0);
  const int n = pieces(rng);
  for (int p = 0; p < n; ++p) {
    const int j = scale(rng);
    const double a = amp(rng);
    GridFunction g = GridFunction::zeros(grid);
    switch (kind(rng)) {
      case 0: g = ball_indicator(d, grid, j); break;
      case 1: g = annulus_indicator(d, grid, j); break;
      default: g = smooth_bump(d, grid, random_center(d, j, rng, 0.5 * grid.half_width, grid.dim), j);
    }
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += a * g[i];
  }
  if (with_noise) {
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (double& x : v) x += u(rng);
  }
  return GridFunction(grid, std::move(v));
}

std::vector<GridFunction> scale_family(const Dilation& d, const Grid& grid, std::size_t count,
                                       std::uint64_t seed) {
  const auto [lo, hi] = resolvable_scales(d, grid);
  std::vector<GridFunction> out;
  out.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    std::seed_seq ss{seed, static_cast<std::uint64_t>(m)};
    std::mt19937_64 rng(ss);
    std::uniform_int_distribution<int> scale(lo, std::max(lo, hi - 1));
    const int j = scale(rng);
    switch (m % 3) {
      case 0: out.push_back(ball_indicator(d, grid, j)); break;
      case 1: out.push_back(annulus_indicator(d, grid, j)); break;
      default: {
        // Translate by a fraction of the ball so the bump stays near the origin.
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        Point shift = {u(rng), grid.dim == 2 ? u(rng) : 0.0};
        for (int t = 0; t < j; ++t) shift = d.apply(shift);
        for (int t = 0; t > j; --t) shift = d.apply_inverse(shift);
        out.push_back(smooth_bump(d, grid, shift, j));
      }
    }
  }
  return out;
}

GridFunction synthesize(const FunctionDescriptor& desc, const Dilation& d, const Grid& grid) {
  GridFunction g = GridFunction::zeros(grid);
  if (desc.kind == "ball") {
    g = ball_indicator(d, grid, desc.k);
  } else if (desc.kind == "annulus") {
    g = annulus_indicator(d, grid, desc.k);
  } else if (desc.kind == "box") {
    g = box_indicator(grid, desc.a, desc.b);
  } else if (desc.kind == "bump") {
    g = smooth_bump(d, grid, desc.center, desc.k);
  } else if (desc.kind == "noise") {
    g = seeded_noise(grid, desc.seed);
  } else {
    throw Error(ErrorCode::ConfigError, "unknown function kind '" + desc.kind + "'");
  }
  return desc.amplitude == 1.0 ? g : g.scaled(desc.amplitude);
}

}  // namespace herzlab
