#include "herzlab/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "herzlab/error.hpp"

namespace herzlab {
namespace {

constexpr double kSeriesTol = 1e-12;
constexpr double kNormSlack = 1e-12;
constexpr int kMaxSeriesTerms = 1'000'000;
constexpr int kMaxSearchSteps = 1 << 16;

double unit_ball_volume(int n) { return n == 1 ? 2.0 : std::numbers::pi; }

// Operator norm of T measured in ||x||_Q = ||L^T x||, Q = L L^T.
double form_operator_norm(const Eigen::MatrixXd& q, const Eigen::MatrixXd& t) {
  Eigen::LLT<Eigen::MatrixXd> llt(q);
  const Eigen::MatrixXd lt = llt.matrixL().transpose();
  const Eigen::MatrixXd conj = lt * t * lt.inverse();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(conj);
  return svd.singularValues()(0);
}

}  // namespace

Dilation Dilation::make(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::NotSquare, "dilation matrix must be square");
  }
  const int n = static_cast<int>(matrix.rows());
  if (n < 1 || n > 2) {
    throw Error(ErrorCode::BadDim, "dilation dimension must be 1 or 2, got " + std::to_string(n));
  }
  if (!matrix.allFinite()) {
    throw Error(ErrorCode::NotExpansive, "dilation matrix has non-finite entries");
  }

  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, false);
  std::array<double, 2> mags{0.0, 0.0};
  for (int i = 0; i < n; ++i) mags[i] = std::abs(solver.eigenvalues()(i));
  std::sort(mags.begin(), mags.begin() + n);
  if (mags[0] <= 1.0) {
    throw Error(ErrorCode::NotExpansive,
                "eigenvalue magnitude " + std::to_string(mags[0]) + " does not exceed 1");
  }

  Dilation d;
  d.dim_ = n;
  d.matrix_ = matrix;
  d.inverse_ = matrix.inverse();
  d.eig_abs_ = mags;
  if (n == 1) d.eig_abs_[1] = mags[0];
  d.b_ = std::abs(matrix.determinant());
  d.lambda_minus_ = 0.5 * (1.0 + d.eig_abs_[0]);
  d.lambda_plus_ = 2.0 * d.eig_abs_[1];
  d.c_growth_ = 0.5 * (1.0 + d.lambda_minus_);

  // M = sum_k c^{2k} (A^{-k})^T A^{-k}, truncated once a term is negligible.
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd form = Eigen::MatrixXd::Zero(n, n);
  const double c2 = d.c_growth_ * d.c_growth_;
  double weight = 1.0;
  int terms = 0;
  for (; terms < kMaxSeriesTerms; ++terms) {
    const Eigen::MatrixXd term = weight * power.transpose() * power;
    form += term;
    if (term.norm() < kSeriesTol * form.norm()) break;
    power = d.inverse_ * power;
    weight *= c2;
  }
  d.form_ = form;
  d.form_terms_ = terms + 1;

  // Scale M so that {x^T Q x < 1} has unit volume: omega_n / sqrt(det Q) = 1.
  const double omega = unit_ball_volume(n);
  const double scale = std::pow(omega * omega / form.determinant(), 1.0 / n);
  d.radius_ = std::sqrt(1.0 / scale);
  d.unit_form_ = scale * form;
  if (n == 1) {
    // The only centred interval of length one.
    d.unit_form_(0, 0) = 4.0;
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      d.a_[2 * i + j] = matrix(i, j);
      d.ainv_[2 * i + j] = d.inverse_(i, j);
    }
  }
  d.q_[0] = d.unit_form_(0, 0);
  if (n == 2) {
    d.q_[1] = 0.5 * (d.unit_form_(0, 1) + d.unit_form_(1, 0));
    d.q_[2] = d.unit_form_(1, 1);
  }

  // Smallest w with ||2 A^{-w}||_{Q -> Q} <= 1, i.e. 2 B_0 inside B_w.
  Eigen::MatrixXd scaled = 2.0 * Eigen::MatrixXd::Identity(n, n);
  int w = 0;
  while (form_operator_norm(d.unit_form_, scaled) > 1.0 + kNormSlack) {
    scaled = d.inverse_ * scaled;
    ++w;
  }
  d.w_ = w;
  return d;
}

Point Dilation::apply(const Point& x) const noexcept {
  if (dim_ == 1) return {a_[0] * x[0], 0.0};
  return {a_[0] * x[0] + a_[1] * x[1], a_[2] * x[0] + a_[3] * x[1]};
}

Point Dilation::apply_inverse(const Point& x) const noexcept {
  if (dim_ == 1) return {ainv_[0] * x[0], 0.0};
  return {ainv_[0] * x[0] + ainv_[1] * x[1], ainv_[2] * x[0] + ainv_[3] * x[1]};
}

bool Dilation::in_unit(const Point& y) const noexcept {
  if (dim_ == 1) return q_[0] * y[0] * y[0] < 1.0;
  return q_[0] * y[0] * y[0] + 2.0 * q_[1] * y[0] * y[1] + q_[2] * y[1] * y[1] < 1.0;
}

bool Dilation::contains(const Point& x, int k) const noexcept {
  Point y = x;
  if (k >= 0) {
    for (int i = 0; i < k; ++i) y = apply_inverse(y);
  } else {
    for (int i = 0; i < -k; ++i) y = apply(y);
  }
  return in_unit(y);
}

int Dilation::annulus_index(const Point& x) const {
  const bool origin = dim_ == 1 ? x[0] == 0.0 : (x[0] == 0.0 && x[1] == 0.0);
  if (origin) throw Error(ErrorCode::OriginQuery, "annulus index is undefined at the origin");

  // y = A^{-m} x; find the smallest m with y inside Delta, return m - 1.
  Point y = x;
  int m = 0;
  if (in_unit(y)) {
    for (int step = 0; step < kMaxSearchSteps; ++step) {
      const Point z = apply(y);
      if (!in_unit(z)) return m - 1;
      y = z;
      --m;
    }
  } else {
    for (int step = 0; step < kMaxSearchSteps; ++step) {
      y = apply_inverse(y);
      ++m;
      if (in_unit(y)) return m - 1;
    }
  }
  throw Error(ErrorCode::BadParams, "annulus search did not terminate");
}

double Dilation::rho(const Point& x) const {
  const bool origin = dim_ == 1 ? x[0] == 0.0 : (x[0] == 0.0 && x[1] == 0.0);
  if (origin) return 0.0;
  return std::pow(b_, annulus_index(x));
}

double Dilation::ball_volume(int k) const { return std::pow(b_, k); }

double Dilation::ellipsoid_volume() const {
  return unit_ball_volume(dim_) / std::sqrt(unit_form_.determinant());
}

double Dilation::growth_lower_bound() const {
  Eigen::LLT<Eigen::MatrixXd> llt(form_);
  const Eigen::MatrixXd lt = llt.matrixL().transpose();
  const Eigen::MatrixXd conj = lt * matrix_ * lt.inverse();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(conj);
  return svd.singularValues()(dim_ - 1);
}

Eigen::MatrixXd Dilation::ball_form(int k) const {
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(dim_, dim_);
  const Eigen::MatrixXd& step = k >= 0 ? inverse_ : matrix_;
  for (int i = 0; i < std::abs(k); ++i) power = step * power;
  return power.transpose() * unit_form_ * power;
}

double Dilation::ball_diameter(int k) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ball_form(k));
  return 2.0 / std::sqrt(es.eigenvalues()(0));
}

double Dilation::ball_min_width(int k) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ball_form(k));
  return 2.0 / std::sqrt(es.eigenvalues()(dim_ - 1));
}

int Dilation::covering_index(double half_width) const {
  int k = std::numeric_limits<int>::min();
  const int corners = dim_ == 1 ? 2 : 4;
  for (int c = 0; c < corners; ++c) {
    Point corner{(c & 1) ? half_width : -half_width, 0.0};
    if (dim_ == 2) corner[1] = (c & 2) ? half_width : -half_width;
    k = std::max(k, annulus_index(corner) + 1);
  }
  return k;
}

QuasiTriangleReport check_quasi_triangle(const Dilation& d,
                                         std::span<const std::pair<Point, Point>> samples) {
  if (samples.empty()) throw Error(ErrorCode::EmptySamples, "quasi-triangle check needs samples");
  QuasiTriangleReport report;
  report.bound = std::pow(d.b(), d.w());
  report.samples = samples.size();
  for (const auto& [x, y] : samples) {
    const double denom = d.rho(x) + d.rho(y);
    if (denom == 0.0) continue;
    const Point s{x[0] + y[0], x[1] + y[1]};
    report.max_ratio = std::max(report.max_ratio, d.rho(s) / denom);
  }
  report.pass = report.max_ratio <= report.bound;
  return report;
}

}  // namespace herzlab
