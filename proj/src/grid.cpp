#include "herzlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "herzlab/error.hpp"

namespace herzlab {

double Grid::cell_volume() const noexcept {
  const double h = spacing();
  return dim == 1 ? h : h * h;
}

std::size_t Grid::size() const noexcept {
  const auto n = static_cast<std::size_t>(resolution);
  return dim == 1 ? n : n * n;
}

Point Grid::center(std::size_t index) const noexcept {
  const double h = spacing();
  const auto n = static_cast<std::size_t>(resolution);
  if (dim == 1) return {-half_width + (static_cast<double>(index) + 0.5) * h, 0.0};
  return {-half_width + (static_cast<double>(index % n) + 0.5) * h,
          -half_width + (static_cast<double>(index / n) + 0.5) * h};
}

std::size_t Grid::flat(int i0, int i1) const noexcept {
  return static_cast<std::size_t>(i0) +
         static_cast<std::size_t>(resolution) * static_cast<std::size_t>(i1);
}

int Grid::axis_index(std::size_t index, int axis) const noexcept {
  const auto n = static_cast<std::size_t>(resolution);
  return static_cast<int>(axis == 0 ? index % n : index / n);
}

void validate(const Grid& grid) {
  if (grid.dim != 1 && grid.dim != 2) {
    throw Error(ErrorCode::BadParams, "grid dimension must be 1 or 2");
  }
  if (grid.resolution <= 0 || !(grid.half_width > 0.0) || !std::isfinite(grid.half_width)) {
    throw Error(ErrorCode::BadParams, "grid needs positive resolution and half width");
  }
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) {
    throw Error(ErrorCode::GridMismatch,
                "grids differ (dim/box/N " + std::to_string(a.dim) + "/" +
                    std::to_string(a.half_width) + "/" + std::to_string(a.resolution) + " vs " +
                    std::to_string(b.dim) + "/" + std::to_string(b.half_width) + "/" +
                    std::to_string(b.resolution) + ")");
  }
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  validate(grid_);
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::GridMismatch, "value count " + std::to_string(values_.size()) +
                                             " does not match grid size " +
                                             std::to_string(grid_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::BadParams, "grid function values must be finite");
  }
}

GridFunction GridFunction::zeros(const Grid& grid) {
  return GridFunction(grid, std::vector<double>(grid.size(), 0.0));
}

double GridFunction::integral() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * grid_.cell_volume();
}

double GridFunction::l1_norm() const {
  double s = 0.0;
  for (double v : values_) s += std::abs(v);
  return s * grid_.cell_volume();
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

GridFunction GridFunction::scaled(double c) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= c;
  return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::abs() const {
  std::vector<double> out(values_);
  for (double& v : out) v = std::abs(v);
  return GridFunction(grid_, std::move(out));
}

namespace {

template <class Op>
GridFunction combine(const GridFunction& f, const GridFunction& g, Op op) {
  require_same_grid(f.grid(), g.grid());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i], g[i]);
  return GridFunction(f.grid(), std::move(out));
}

}  // namespace

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
  return combine(f, g, [](double a, double b) { return a + b; });
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
  return combine(f, g, [](double a, double b) { return a - b; });
}

GridFunction operator*(const GridFunction& f, const GridFunction& g) {
  return combine(f, g, [](double a, double b) { return a * b; });
}

}  // namespace herzlab
