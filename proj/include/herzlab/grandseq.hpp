#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace herzlab {

enum class IndexSet { integers, nonnegative, positive };

/// Finite-support sequence: values[i] is the entry at index offset + i.
struct Sequence {
  int offset = 0;
  std::vector<double> values;
  IndexSet index_set = IndexSet::integers;

  /// Entries whose index belongs to index_set.
  std::vector<double> active() const;
  bool is_zero() const;
};

struct GrandSequenceParams {
  double p = 1.0;
  double theta = 1.0;
  double eps_min = 1e-6;
  double eps_max = 1e6;
  int grid_points = 256;
  double refine_tol = 1e-10;  ///< on log(eps), i.e. relative in eps
};

/// (sum |x_k|^p)^{1/p}. Throws BadExponent for p < 1.
double lp_seq_norm(const Sequence& x, double p);

struct GrandSupResult {
  double value = 0.0;
  double argmax_eps = 0.0;  ///< +inf when the eps -> infinity limit wins
  bool at_limit = false;
};

/// sup_{eps > 0} (eps^theta sum |x_k|^{p(1+eps)})^{1/(p(1+eps))}, maximised in
/// log space: a log-spaced scan, golden-section refinement around the best
/// point, then a comparison with the eps -> infinity limit ||x||_inf.
/// Ties go to the smallest eps. Throws BadParams for p < 1 or theta <= 0.
GrandSupResult grand_seq_sup(const std::vector<double>& x, const GrandSequenceParams& params);
GrandSupResult grand_seq_sup(const Sequence& x, const GrandSequenceParams& params);
double grand_seq_norm(const Sequence& x, const GrandSequenceParams& params);

/// Sequence norm with the weight factor eps^theta fixed at one eps.
double grand_seq_term(const std::vector<double>& x, double p, double theta, double eps);

/// Golden-section maximisation of a unimodal function on [a, b].
/// Returns the maximiser; ties resolve toward a.
template <class Fn>
double golden_max(Fn&& fn, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  return fc >= fd ? c : d;
}

struct NestingReport {
  /// l^{p(1-eps)}, l^p, l^{p),theta1}, l^{p),theta2}, l^{p(1+delta)}.
  std::array<double, 5> norms{};
  static constexpr std::array<const char*, 5> names{"lp_minus", "lp", "grand_theta1",
                                                     "grand_theta2", "lp_plus"};
  /// Each embedding as (smaller-space norm) / (larger-space norm) read along
  /// the chain: norms[i+1] / norms[i], except the last which is norms[4] / norms[3].
  std::array<double, 4> ratios{};
  /// Analytic ceilings where one is derivable; theta1 -> theta2 is recorded only.
  std::array<std::optional<double>, 4> bounds{};
  bool pass = false;
};

/// The quasi-norm l^r with r < 1 is used internally for the first link.
/// Throws BadParams unless theta1 <= theta2, 0 < eps < 1/p, delta > 0.
NestingReport nesting_report(const Sequence& x, double p, double theta1, double theta2,
                             double eps, double delta);

}  // namespace herzlab
