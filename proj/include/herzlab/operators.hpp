#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "herzlab/dilation.hpp"
#include "herzlab/grid.hpp"
#include "herzlab/herz.hpp"

namespace herzlab {

enum class OperatorKind { identity, hardy, truncated_riesz, maximal };
enum class BallShape { anisotropic, euclidean };

struct OperatorSpec {
  OperatorKind kind = OperatorKind::identity;
  double cutoff = 0.0;                           ///< truncated_riesz only
  std::optional<std::pair<int, int>> krange;     ///< maximal only; default covers the grid
  BallShape ball = BallShape::anisotropic;       ///< maximal only

  std::string name() const;
};

/// Parses "identity", "hardy", "riesz[:cutoff]", "maximal" or "maximal-euclid".
OperatorSpec parse_operator(const std::string& text);

/// Hf(x) = rho(x)^{-1} int_{rho(y) <= rho(x)} f(y) dy, 0 at the origin. The
/// inner integrals are summed exactly, so data with zero mean inside B_k gives
/// Hf = 0 exactly wherever B_k is captured.
GridFunction hardy_apply(const GridFunction& f, const Dilation& d);

/// Smallest cutoff accepted by truncated_riesz_apply: max_i rho(h e_i).
double riesz_min_cutoff(const Dilation& d, const Grid& grid);

/// Tf(x) = int_{rho(x-y) >= cutoff} f(y) / rho(x-y) dy. Throws CutoffTooSmall.
GridFunction truncated_riesz_apply(const GridFunction& f, const Dilation& d, double cutoff);

/// Default ball range: from the largest k whose stencil is one cell up to a
/// ball that covers the whole box from any cell.
std::pair<int, int> maximal_default_krange(const Dilation& d, const Grid& grid, BallShape ball);

/// Mf(x) = max_k average of |f| over x + B_k (cells whose centre offset lies in
/// the ball; the average uses the stencil's cell count). The Euclidean
/// variant uses round balls of volume b^k.
GridFunction maximal_apply(const GridFunction& f, const Dilation& d,
                           std::optional<std::pair<int, int>> krange = std::nullopt,
                           BallShape ball = BallShape::anisotropic);

GridFunction apply(const OperatorSpec& op, const GridFunction& f, const Dilation& d);

/// ||Tf|| / ||f|| in the Herz-Morrey norm of params (grand Herz when lambda = 0).
/// Throws ZeroFunction.
double op_ratio(const OperatorSpec& op, const GridFunction& f, const Dilation& d,
                const HerzSpaceParams& params);

struct SizeCheckReport {
  std::string check;
  double constant = 0.0;         ///< tightest C found
  double max_violation = 0.0;    ///< max |Tf(x)| - C_bound * bound(x) when a bound is asserted
  std::size_t points = 0;
  bool pass = false;
};

/// |Hf(x)| <= ||f||_1 / rho(x). The far-field size condition only asks for
/// this off an inflated support; the Hardy operator meets it at every x != 0,
/// so every grid point is checked.
SizeCheckReport hardy_size_check(const GridFunction& f, const Dilation& d);

/// |Tf(x)| <= int |f(y)| / rho(x - y) dy at every sampled x off supp f.
SizeCheckReport riesz_kernel_check(const GridFunction& f, const Dilation& d, double cutoff,
                                   std::size_t samples, std::uint64_t seed);

struct SweepOptions {
  std::vector<double> alphas;
  std::vector<double> lambdas;
  bool lambda_relative = false;  ///< lambdas are fractions of alpha
  HerzSpaceParams base;          ///< alpha and lambda are overwritten per cell
  std::size_t small_size = 100;  ///< the family prefix used as the small family
  double stable_threshold = 1.5;
};

struct SweepCell {
  double alpha = 0.0;
  double lambda = 0.0;
  bool admissible = false;
  double sup_small = 0.0;
  double sup_large = 0.0;
  double growth = 0.0;  ///< sup_large / sup_small
  bool stable = false;
};

struct SweepTable {
  std::string op;
  double delta2 = 0.0;
  std::size_t small_size = 0;
  std::size_t large_size = 0;
  std::vector<SweepCell> cells;
  /// Every admissible cell is stable.
  bool pass = false;

  std::string to_csv() const;
  std::string to_svg() const;
};

/// For each (alpha, lambda) cell, the sup of op_ratio over the family and over
/// its first small_size members. Admissible cells satisfy 0 < alpha < delta2
/// and (lambda = 0 or 2 lambda < alpha). Throws EmptyGrid.
SweepTable boundedness_sweep(const OperatorSpec& op, const Dilation& d,
                             const std::vector<GridFunction>& family, const SweepOptions& options);

/// Parses "start:stop:step" (inclusive stop) or a comma list.
std::vector<double> parse_range(const std::string& text);

}  // namespace herzlab
