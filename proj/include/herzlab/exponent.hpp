#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "herzlab/dilation.hpp"
#include "herzlab/grid.hpp"

namespace herzlab {

enum class ExponentKind { constant, log_family, step, conjugate, harmonic_sum, sum };

namespace detail {
struct ExponentNode;
}

/// Radial exponent function g(|x|) used for p(.), q(.) and alpha(.).
///
/// The log family is g(x) = g_inf + (g_0 - g_inf) / log(e + |x|), which has
/// log decay at the origin and at infinity with constant |g_0 - g_inf|. The
/// step family jumps at |x| = radius and exists to exercise piecewise exponents
/// and the failure path of the log-Hoelder check.
class ExponentFunction {
 public:
  static ExponentFunction constant(double value);
  static ExponentFunction log_family(double at_origin, double at_infinity);
  static ExponentFunction step(double radius, double inner, double outer);

  /// Exponent with 1/p = 1/a + 1/b pointwise.
  static ExponentFunction harmonic_sum(const ExponentFunction& a, const ExponentFunction& b);
  /// Pointwise a + b (used for alpha = alpha_1 + alpha_2).
  static ExponentFunction sum(const ExponentFunction& a, const ExponentFunction& b);

  double operator()(const Point& x) const;
  double at_radius(double r) const;

  /// Bounds valid for every x: lower() <= g(x) <= upper().
  double lower() const;
  double upper() const;
  double at_origin() const;
  double at_infinity() const;

  /// Constant C of both decay conditions, when the family provides one.
  std::optional<double> log_holder_constant() const;

  bool is_constant() const;
  ExponentKind kind() const;
  std::string describe() const;

  std::vector<double> sample(const Grid& grid) const;

 private:
  explicit ExponentFunction(std::shared_ptr<const detail::ExponentNode> node);
  std::shared_ptr<const detail::ExponentNode> node_;

  friend ExponentFunction conjugate(const ExponentFunction& p);
};

/// p'(x) = p(x) / (p(x) - 1). Throws NotInClassP when p^- <= 1.
/// conjugate(conjugate(p)) returns p itself.
ExponentFunction conjugate(const ExponentFunction& p);

/// Parses "const:V", "log:G0,GINF" or "step:R,INNER,OUTER". Throws ConfigError.
ExponentFunction parse_exponent(const std::string& text);

}  // namespace herzlab
