#include "herzlab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace herzlab::oracle {

namespace {

// Maximise g over log10(eps) in [lo, hi]: a fine scan, then five rounds of
// rescanning a +-2 step window around the best point.
double dense_max(const std::function<double(double)>& g, double lo, double hi, int points) {
  double best_u = lo;
  double best = -INFINITY;
  double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double u = lo + step * i;
    const double v = g(u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  for (int round = 0; round < 6; ++round) {
    const double a = best_u - 2.0 * step;
    const double b = best_u + 2.0 * step;
    step = (b - a) / 1000.0;
    for (int i = 0; i <= 1000; ++i) {
      const double u = a + step * i;
      const double v = g(u);
      if (v > best) {
        best = v;
        best_u = u;
      }
    }
  }
  return best;
}

}  // namespace

double grand_seq_dense(const std::vector<double>& x, double p, double theta) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  if (m == 0.0) return 0.0;
  auto logval = [&](double u) {
    const double eps = std::pow(10.0, u);
    const double s = p * (1.0 + eps);
    double sum = 0.0;
    for (double v : x) {
      if (v != 0.0) sum += std::pow(std::fabs(v) / m, s);
    }
    return (theta * std::log(eps) + std::log(sum)) / s + std::log(m);
  };
  return std::max(m, std::exp(dense_max(logval, -8.0, 8.0, 20001)));
}

double delta_sequence_p1_theta1() {
  double lo = 1.0, hi = 10.0;  // ln(e) - 1 - 1/e < 0, ln(10) - 1.1 > 0
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::log(mid) - 1.0 - 1.0 / mid < 0.0 ? lo : hi) = mid;
  }
  return std::exp(1.0 / (0.5 * (lo + hi)));
}

double constant_herz(double b, double alpha, double q, double p, double theta) {
  const double gamma = alpha + 1.0 / q;
  const double c = 1.0 - 1.0 / b;
  auto logval = [&](double u) {
    const double eps = std::pow(10.0, u);
    const double s = p * (1.0 + eps);
    const double log_sum = (s / q) * std::log(c) - std::log1p(-std::pow(b, -s * gamma));
    return (theta * std::log(eps) + log_sum) / s;
  };
  const double top = std::pow(c, 1.0 / q);  // largest slice norm, k = 0
  return std::max(top, std::exp(dense_max(logval, -8.0, 8.0, 20001)));
}

double constant_herz_morrey(double b, double alpha, double q, double p, double theta, double lambda) {
  const double gamma = alpha + 1.0 / q;
  const double c = 1.0 - 1.0 / b;
  double best = 0.0;
  for (int L = -60; L <= 5; ++L) {
    const int top = std::min(L, 0);
    auto logval = [&](double u) {
      const double eps = std::pow(10.0, u);
      const double s = p * (1.0 + eps);
      const double log_sum =
          (s / q) * std::log(c) + top * s * gamma * std::log(b) - std::log1p(-std::pow(b, -s * gamma));
      return (theta * std::log(eps) + log_sum) / s - L * lambda * std::log(b);
    };
    const double limit = std::pow(c, 1.0 / q) * std::pow(b, top * gamma - L * lambda);
    best = std::max({best, limit, std::exp(dense_max(logval, -8.0, 8.0, 4001))});
  }
  return best;
}

double luxemburg_pieces(const std::vector<double>& measures, const std::vector<double>& values,
                        const std::vector<double>& exponents) {
  auto modular = [&](double lam) {
    double s = 0.0;
    for (std::size_t i = 0; i < measures.size(); ++i) {
      s += measures[i] * std::pow(std::fabs(values[i]) / lam, exponents[i]);
    }
    return s;
  };
  double lo = 1e-300, hi = 1.0;
  while (modular(hi) > 1.0) hi *= 2.0;
  if (modular(hi) == 0.0) return 0.0;
  lo = hi / 2.0;
  while (modular(lo) < 1.0 && lo > 1e-300) lo /= 2.0;
  for (int i = 0; i < 400 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (modular(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double luxemburg_two_piece() {
  const double t = (std::sqrt(5.0) - 1.0) / 2.0;
  return 1.0 / std::sqrt(t);
}

int annulus_index_1d(double a, double x) {
  const double base = std::fabs(a);
  const double r = 2.0 * std::fabs(x);
  int j = static_cast<int>(std::floor(std::log(r) / std::log(base)));
  // Guard the floor against log rounding at the interval ends.
  while (std::pow(base, j) > r) --j;
  while (std::pow(base, j + 1) <= r) ++j;
  return j;
}

}  // namespace herzlab::oracle
