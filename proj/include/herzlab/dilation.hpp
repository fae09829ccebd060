#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace herzlab {

/// Point of R^n with n <= 2. For n = 1 the second coordinate is ignored.
using Point = std::array<double, 2>;

/// Anisotropic geometry generated by an expansive matrix A.
///
/// The unit ellipsoid is Delta = {x : x^T M x < r0^2} with
/// M = sum_k c^{2k} (A^{-k})^T A^{-k}, which makes ||A x||_M >= c ||x||_M and
/// hence B_k = A^k Delta strictly nested. All queries are const and pure, so a
/// Dilation can be shared freely between threads.
class Dilation {
 public:
  /// Throws NotSquare, BadDim (n outside {1, 2}) or NotExpansive.
  static Dilation make(const Eigen::MatrixXd& matrix);

  int dim() const noexcept { return dim_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  const Eigen::MatrixXd& inverse() const noexcept { return inverse_; }

  double b() const noexcept { return b_; }
  double lambda_minus() const noexcept { return lambda_minus_; }
  double lambda_plus() const noexcept { return lambda_plus_; }
  double c_growth() const noexcept { return c_growth_; }
  int w() const noexcept { return w_; }

  /// Eigenvalue magnitudes sorted ascending.
  const std::array<double, 2>& eigen_magnitudes() const noexcept { return eig_abs_; }

  /// M and r0 as constructed; unit_form() is M / r0^2 so Delta = {x^T Q x < 1}.
  const Eigen::MatrixXd& ellipsoid_form() const noexcept { return form_; }
  double radius() const noexcept { return radius_; }
  const Eigen::MatrixXd& unit_form() const noexcept { return unit_form_; }

  /// Number of series terms used to build M.
  int form_terms() const noexcept { return form_terms_; }

  Point apply(const Point& x) const noexcept;
  Point apply_inverse(const Point& x) const noexcept;

  /// x in B_k, i.e. ||A^{-k} x||_Q < 1.
  bool contains(const Point& x, int k) const noexcept;

  /// The unique j with x in B_{j+1} \ B_j. Throws OriginQuery at x = 0.
  int annulus_index(const Point& x) const;

  /// Step quasi-norm: b^j on B_{j+1} \ B_j, 0 at the origin.
  double rho(const Point& x) const;

  /// |B_k| = b^k.
  double ball_volume(int k) const;

  /// Lebesgue measure of Delta from the closed-form ellipsoid volume.
  double ellipsoid_volume() const;

  /// inf_{x != 0} ||A x||_M / ||x||_M.
  double growth_lower_bound() const;

  /// B_k = {x : x^T Q_k x < 1}.
  Eigen::MatrixXd ball_form(int k) const;

  /// Longest and shortest Euclidean extent of B_k.
  double ball_diameter(int k) const;
  double ball_min_width(int k) const;

  /// Smallest k with B_k containing the closed cube [-R, R]^n.
  int covering_index(double half_width) const;

 private:
  Dilation() = default;
  bool in_unit(const Point& y) const noexcept;

  int dim_ = 1;
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd inverse_;
  Eigen::MatrixXd form_;
  Eigen::MatrixXd unit_form_;
  std::array<double, 4> a_{};
  std::array<double, 4> ainv_{};
  std::array<double, 3> q_{};  // q00, q01, q11
  std::array<double, 2> eig_abs_{};
  double b_ = 0.0;
  double lambda_minus_ = 0.0;
  double lambda_plus_ = 0.0;
  double c_growth_ = 0.0;
  double radius_ = 0.0;
  int w_ = 0;
  int form_terms_ = 0;
};

struct QuasiTriangleReport {
  std::string check = "quasi_triangle";
  double max_ratio = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::size_t samples = 0;
};

/// max over pairs of rho(x+y) / (rho(x) + rho(y)) against b^w.
/// Throws EmptySamples.
QuasiTriangleReport check_quasi_triangle(const Dilation& d,
                                         std::span<const std::pair<Point, Point>> samples);

}  // namespace herzlab
