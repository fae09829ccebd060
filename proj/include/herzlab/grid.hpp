#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "herzlab/dilation.hpp"

namespace herzlab {

/// Uniform cell-centred grid on the cube [-R, R]^n. Flat index i0 + N * i1.
struct Grid {
  int dim = 1;
  double half_width = 1.0;
  int resolution = 0;

  double spacing() const noexcept { return 2.0 * half_width / resolution; }
  double cell_volume() const noexcept;
  std::size_t size() const noexcept;
  Point center(std::size_t index) const noexcept;
  std::size_t flat(int i0, int i1 = 0) const noexcept;
  int axis_index(std::size_t index, int axis) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Throws BadParams for a non-positive resolution or width, or dim outside {1, 2}.
void validate(const Grid& grid);

/// Throws GridMismatch unless both grids are identical.
void require_same_grid(const Grid& a, const Grid& b);

/// Immutable sampled function; values are midpoint samples at cell centres.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction zeros(const Grid& grid);

  template <class Fn>
  static GridFunction sample(const Grid& grid, Fn&& fn) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(grid.center(i));
    return GridFunction(grid, std::move(values));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  double integral() const;
  double l1_norm() const;
  double sup_norm() const;
  bool is_zero() const noexcept;

  GridFunction scaled(double c) const;
  GridFunction abs() const;

  friend GridFunction operator+(const GridFunction& f, const GridFunction& g);
  friend GridFunction operator-(const GridFunction& f, const GridFunction& g);
  /// Pointwise product.
  friend GridFunction operator*(const GridFunction& f, const GridFunction& g);

 private:
  Grid grid_;
  std::vector<double> values_;
};

}  // namespace herzlab
