#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "herzlab/dilation.hpp"
#include "herzlab/exponent.hpp"
#include "herzlab/grid.hpp"

namespace herzlab {

struct LuxemburgOptions {
  double rel_tol = 1e-13;
  int max_iter = 200;
};

/// Quadrature modular  sum_i (|v_i| / lam)^{e_i} * cell_volume.
/// Throws NonPositiveLambda.
double modular_cells(std::span<const double> values, std::span<const double> exponents,
                     double cell_volume, double lam);

/// Luxemburg norm of cell samples: the lam with modular = 1, by bisection on a
/// bracket grown or shrunk by powers of two from (int |f|^{p^-})^{1/p^-}.
/// Returns 0 for an identically zero input.
double luxemburg_cells(std::span<const double> values, std::span<const double> exponents,
                       double cell_volume, const LuxemburgOptions& options = {});

/// region, when non-empty, selects the cells that take part (nonzero = inside).
double modular(const GridFunction& f, double lam, const ExponentFunction& p,
               std::span<const unsigned char> region = {});

double luxemburg_norm(const GridFunction& f, const ExponentFunction& p,
                      const LuxemburgOptions& options = {});

/// r_p = 1 + 1/p^- - 1/p^+.
double holder_constant(const ExponentFunction& p);

/// r_p ||f||_{p} ||g||_{p'} - int |f g|; nonnegative up to rounding.
/// Throws GridMismatch or NotInClassP.
double holder_defect(const GridFunction& f, const GridFunction& g, const ExponentFunction& p);

struct BallNormProduct {
  int k = 0;
  double product = 0.0;        ///< ||chi||_p ||chi||_p' / |B_k ∩ grid|
  double product_exact = 0.0;  ///< same, divided by b^k
  double grid_measure = 0.0;
  double exact_measure = 0.0;
};

/// Throws EmptyBall when no cell centre lies in B_k.
BallNormProduct ball_norm_product(const Dilation& d, const Grid& grid, int k,
                                  const ExponentFunction& p);

struct SubsetRatioFit {
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::size_t pairs = 0;
};

/// Log-log slopes of ||chi_{B_j}|| / ||chi_{B_k}|| against |B_j| / |B_k| over
/// j < k in [k_lo, k_hi], for p (delta1) and p' (delta2).
/// Throws InsufficientRange with fewer than three pairs.
SubsetRatioFit subset_ratio_fit(const Dilation& d, const Grid& grid, const ExponentFunction& p,
                                int k_lo, int k_hi);

struct ProductNormReport {
  double ratio = 0.0;  ///< ||fg||_p / (||f||_q ||g||_r)
  double bound = 1.0;  ///< (p/q)^+ + (p/r)^+ over the grid; 1 for constant exponents
  bool degenerate = false;
  bool pass = false;
};

/// Derived p from 1/p = 1/q + 1/r. Throws ReciprocalMismatch when p^- <= 1.
ProductNormReport product_norm_check(const GridFunction& f, const GridFunction& g,
                                     const ExponentFunction& q, const ExponentFunction& r);

struct LogHolderReport {
  double origin_constant = 0.0;    ///< max |g(x) - g(0)| log(e + 1/|x|)
  double infinity_constant = 0.0;  ///< max |g(x) - g_inf| log(e + |x|)
  double local_constant = 0.0;     ///< max |g(x) - g(y)| log(e + 1/|x - y|)
  double local_coarse = 0.0;
  double local_fine = 0.0;
  std::optional<double> analytic_constant;
  bool pass = false;
  std::string failure;  ///< "NotLogHolder" when the local constant blows up
};

/// Samples the decay conditions at the given points and zooms into the
/// largest local oscillation around each one to detect jumps.
LogHolderReport log_holder_check(const ExponentFunction& g, std::span<const Point> samples);

}  // namespace herzlab
