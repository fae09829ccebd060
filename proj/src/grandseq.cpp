#include "herzlab/grandseq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "herzlab/error.hpp"

namespace herzlab {

std::vector<double> Sequence::active() const {
  std::vector<double> out;
  out.reserve(values.size());
  const int first = index_set == IndexSet::integers ? std::numeric_limits<int>::min()
                    : index_set == IndexSet::nonnegative ? 0
                                                         : 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (offset + static_cast<int>(i) >= first) out.push_back(values[i]);
  }
  return out;
}

bool Sequence::is_zero() const {
  const auto a = active();
  return std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
}

namespace {

double max_abs(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

// log (sum |x|^s)^{1/s}, scaled by the max entry to stay finite.
double log_lr(const std::vector<double>& x, double m, double s) {
  double sum = 0.0;
  for (double v : x) {
    const double a = std::fabs(v);
    if (a != 0.0) sum += std::pow(a / m, s);
  }
  return std::log(m) + std::log(sum) / s;
}

double lr_quasi(const std::vector<double>& x, double r) {
  const double m = max_abs(x);
  return m == 0.0 ? 0.0 : std::exp(log_lr(x, m, r));
}

}  // namespace

double lp_seq_norm(const Sequence& x, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::BadExponent, "l^p needs p >= 1");
  return lr_quasi(x.active(), p);
}

double grand_seq_term(const std::vector<double>& x, double p, double theta, double eps) {
  const double m = max_abs(x);
  if (m == 0.0) return 0.0;
  const double s = p * (1.0 + eps);
  return std::exp(theta * std::log(eps) / s + log_lr(x, m, s));
}

GrandSupResult grand_seq_sup(const std::vector<double>& x, const GrandSequenceParams& params) {
  if (!(params.p >= 1.0) || !(params.theta > 0.0)) {
    throw Error(ErrorCode::BadParams, "grand sequence norm needs p >= 1 and theta > 0");
  }
  if (params.grid_points < 3 || !(params.eps_min > 0.0) || !(params.eps_max > params.eps_min)) {
    throw Error(ErrorCode::BadParams, "bad eps grid");
  }
  GrandSupResult out;
  const double m = max_abs(x);
  if (m == 0.0) return out;

  const double p = params.p;
  const double theta = params.theta;
  auto h = [&](double u) {
    const double s = p * (1.0 + std::exp(u));
    return theta * u / s + log_lr(x, m, s);
  };
  const double u0 = std::log(params.eps_min);
  const double u1 = std::log(params.eps_max);
  const int n = params.grid_points;
  const double du = (u1 - u0) / (n - 1);
  int best = 0;
  double best_h = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double v = h(u0 + du * i);
    if (v > best_h) {
      best_h = v;
      best = i;
    }
  }
  const double a = u0 + du * std::max(best - 1, 0);
  const double b = u0 + du * std::min(best + 1, n - 1);
  double best_u = u0 + du * best;
  const double u_ref = golden_max(h, a, b, params.refine_tol);
  const double h_ref = h(u_ref);
  if (h_ref > best_h) {
    best_h = h_ref;
    best_u = u_ref;
  }
  out.value = std::exp(best_h);
  out.argmax_eps = std::exp(best_u);
  if (m > out.value) {
    out.value = m;
    out.argmax_eps = std::numeric_limits<double>::infinity();
    out.at_limit = true;
  }
  return out;
}

GrandSupResult grand_seq_sup(const Sequence& x, const GrandSequenceParams& params) {
  return grand_seq_sup(x.active(), params);
}

double grand_seq_norm(const Sequence& x, const GrandSequenceParams& params) {
  return grand_seq_sup(x, params).value;
}

NestingReport nesting_report(const Sequence& x, double p, double theta1, double theta2,
                             double eps, double delta) {
  if (!(p >= 1.0) || !(theta1 > 0.0) || !(theta1 <= theta2) || !(eps > 0.0) ||
      !(eps < 1.0 / p) || !(delta > 0.0)) {
    throw Error(ErrorCode::BadParams,
                "nesting needs p >= 1, 0 < theta1 <= theta2, 0 < eps < 1/p, delta > 0");
  }
  const auto v = x.active();
  NestingReport out;
  GrandSequenceParams g1{.p = p, .theta = theta1};
  GrandSequenceParams g2{.p = p, .theta = theta2};
  out.norms = {lr_quasi(v, p * (1.0 - eps)), lr_quasi(v, p), grand_seq_sup(v, g1).value,
               grand_seq_sup(v, g2).value, lr_quasi(v, p * (1.0 + delta))};
  if (out.norms[1] == 0.0) {
    out.pass = true;
    return out;
  }
  for (int i = 0; i < 3; ++i) out.ratios[i] = out.norms[i + 1] / out.norms[i];
  out.ratios[3] = out.norms[4] / out.norms[3];

  // l^r norms decrease in r.
  out.bounds[0] = 1.0;
  // ||x||_{p(1+e)} <= ||x||_p, so the grand norm is at most the delta-sequence value.
  out.bounds[1] = grand_seq_sup(std::vector<double>{1.0}, g1).value;
  // Taking eps = delta in the supremum.
  out.bounds[3] = std::pow(delta, -theta2 / (p * (1.0 + delta)));
  out.pass = std::all_of(out.ratios.begin(), out.ratios.end(),
                         [](double r) { return std::isfinite(r); });
  for (int i = 0; i < 4; ++i) {
    if (out.bounds[i] && out.ratios[i] > *out.bounds[i] * (1.0 + 1e-9)) out.pass = false;
  }
  return out;
}

}  // namespace herzlab
