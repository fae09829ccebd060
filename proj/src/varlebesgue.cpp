#include "herzlab/varlebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "herzlab/error.hpp"

namespace herzlab {

namespace {

// Nonzero cells in log form: the modular at log-scale mu is
// vol * sum exp(e_i (l_i - mu)), which cannot overflow for huge samples.
struct LogCells {
  std::vector<double> logs;
  std::vector<double> exps;
  bool uniform = true;
};

LogCells collect(std::span<const double> values, std::span<const double> exponents) {
  LogCells cells;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::fabs(values[i]);
    if (a == 0.0) continue;
    cells.logs.push_back(std::log(a));
    cells.exps.push_back(exponents[i]);
    if (exponents[i] != exponents[0]) cells.uniform = false;
  }
  return cells;
}

double log_modular(const LogCells& cells, double log_volume, double mu) {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cells.logs.size(); ++i) {
    top = std::max(top, cells.exps[i] * (cells.logs[i] - mu));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < cells.logs.size(); ++i) {
    s += std::exp(cells.exps[i] * (cells.logs[i] - mu) - top);
  }
  return log_volume + top + std::log(s);
}

}  // namespace

double modular_cells(std::span<const double> values, std::span<const double> exponents,
                     double cell_volume, double lam) {
  if (!(lam > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "lambda must be positive");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::fabs(values[i]);
    if (a != 0.0) s += std::pow(a / lam, exponents[i]);
  }
  return s * cell_volume;
}

double luxemburg_cells(std::span<const double> values, std::span<const double> exponents,
                       double cell_volume, const LuxemburgOptions& options) {
  const LogCells cells = collect(values, exponents);
  if (cells.logs.empty()) return 0.0;
  const double log_volume = std::log(cell_volume);

  if (cells.uniform) {
    // Closed form (int |f|^p)^{1/p}, evaluated in log space.
    const double p = cells.exps[0];
    return std::exp(log_modular(cells, log_volume, 0.0) / p);
  }

  const double p_minus = *std::min_element(cells.exps.begin(), cells.exps.end());
  double lo = 0.0;
  {
    LogCells flat = cells;
    std::fill(flat.exps.begin(), flat.exps.end(), p_minus);
    lo = log_modular(flat, log_volume, 0.0) / p_minus;
  }
  double hi = lo;
  const double step = std::numbers::ln2;
  // log modular is decreasing in mu; root where it crosses 0.
  int guard = 0;
  if (log_modular(cells, log_volume, lo) >= 0.0) {
    do {
      lo = hi;
      hi += step;
    } while (log_modular(cells, log_volume, hi) > 0.0 && ++guard < 4000);
  } else {
    do {
      hi = lo;
      lo -= step;
    } while (log_modular(cells, log_volume, lo) < 0.0 && ++guard < 4000);
  }
  for (int it = 0; it < options.max_iter && hi - lo > options.rel_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (log_modular(cells, log_volume, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

double modular(const GridFunction& f, double lam, const ExponentFunction& p,
               std::span<const unsigned char> region) {
  if (!(lam > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "lambda must be positive");
  const Grid& grid = f.grid();
  if (!region.empty() && region.size() != f.size()) {
    throw Error(ErrorCode::GridMismatch, "region mask size differs from grid");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!region.empty() && !region[i]) continue;
    const double a = std::fabs(f[i]);
    if (a != 0.0) s += std::pow(a / lam, p(grid.center(i)));
  }
  return s * grid.cell_volume();
}

double luxemburg_norm(const GridFunction& f, const ExponentFunction& p,
                      const LuxemburgOptions& options) {
  if (f.is_zero()) return 0.0;
  const std::vector<double> e = p.sample(f.grid());
  return luxemburg_cells(f.values(), e, f.grid().cell_volume(), options);
}

double holder_constant(const ExponentFunction& p) {
  return 1.0 + 1.0 / p.lower() - 1.0 / p.upper();
}

double holder_defect(const GridFunction& f, const GridFunction& g, const ExponentFunction& p) {
  require_same_grid(f.grid(), g.grid());
  const ExponentFunction pc = conjugate(p);
  const double lhs = holder_constant(p) * luxemburg_norm(f, p) * luxemburg_norm(g, pc);
  return lhs - (f * g).l1_norm();
}

namespace {

struct BallCells {
  std::vector<double> ones;
  std::vector<double> p;
  std::vector<double> pc;
  double measure = 0.0;
};

BallCells ball_cells(const Dilation& d, const Grid& grid, int k, const std::vector<double>& p,
                     const std::vector<double>& pc) {
  BallCells cells;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!d.contains(grid.center(i), k)) continue;
    cells.ones.push_back(1.0);
    cells.p.push_back(p[i]);
    cells.pc.push_back(pc[i]);
  }
  if (cells.ones.empty()) {
    throw Error(ErrorCode::EmptyBall, "B_" + std::to_string(k) + " holds no cell centre");
  }
  cells.measure = static_cast<double>(cells.ones.size()) * grid.cell_volume();
  return cells;
}

}  // namespace

BallNormProduct ball_norm_product(const Dilation& d, const Grid& grid, int k,
                                  const ExponentFunction& p) {
  validate(grid);
  const ExponentFunction pc = conjugate(p);
  const auto ps = p.sample(grid);
  const auto pcs = pc.sample(grid);
  const BallCells cells = ball_cells(d, grid, k, ps, pcs);
  const double vol = grid.cell_volume();
  const double norms =
      luxemburg_cells(cells.ones, cells.p, vol) * luxemburg_cells(cells.ones, cells.pc, vol);
  BallNormProduct out;
  out.k = k;
  out.grid_measure = cells.measure;
  out.exact_measure = d.ball_volume(k);
  out.product = norms / out.grid_measure;
  out.product_exact = norms / out.exact_measure;
  return out;
}

SubsetRatioFit subset_ratio_fit(const Dilation& d, const Grid& grid, const ExponentFunction& p,
                                int k_lo, int k_hi) {
  validate(grid);
  const std::size_t m = k_hi >= k_lo ? static_cast<std::size_t>(k_hi - k_lo + 1) : 0;
  const std::size_t pairs = m * (m > 0 ? m - 1 : 0) / 2;
  if (pairs < 3) {
    throw Error(ErrorCode::InsufficientRange,
                "need at least three index pairs, got " + std::to_string(pairs));
  }
  const ExponentFunction pc = conjugate(p);
  const auto ps = p.sample(grid);
  const auto pcs = pc.sample(grid);
  const double vol = grid.cell_volume();
  std::vector<double> lv, ln1, ln2;
  for (int k = k_lo; k <= k_hi; ++k) {
    const BallCells cells = ball_cells(d, grid, k, ps, pcs);
    lv.push_back(std::log(cells.measure));
    ln1.push_back(std::log(luxemburg_cells(cells.ones, cells.p, vol)));
    ln2.push_back(std::log(luxemburg_cells(cells.ones, cells.pc, vol)));
  }
  // Least squares through the origin over all pairs j < k.
  double sxx = 0.0, sx1 = 0.0, sx2 = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      const double x = lv[j] - lv[k];
      sxx += x * x;
      sx1 += x * (ln1[j] - ln1[k]);
      sx2 += x * (ln2[j] - ln2[k]);
    }
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorCode::InsufficientRange, "balls in range have identical grid measure");
  }
  return {sx1 / sxx, sx2 / sxx, pairs};
}

ProductNormReport product_norm_check(const GridFunction& f, const GridFunction& g,
                                     const ExponentFunction& q, const ExponentFunction& r) {
  require_same_grid(f.grid(), g.grid());
  const ExponentFunction p = ExponentFunction::harmonic_sum(q, r);
  if (!(p.lower() > 1.0)) {
    throw Error(ErrorCode::ReciprocalMismatch,
                "derived exponent has p^- = " + std::to_string(p.lower()) + " <= 1");
  }
  ProductNormReport out;
  const Grid& grid = f.grid();
  if (q.is_constant() && r.is_constant()) {
    out.bound = 1.0;
  } else {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Point x = grid.center(i);
      const double pv = p(x);
      a = std::max(a, pv / q(x));
      b = std::max(b, pv / r(x));
    }
    out.bound = a + b;
  }
  const double nf = luxemburg_norm(f, q);
  const double ng = luxemburg_norm(g, r);
  if (nf == 0.0 || ng == 0.0) {
    out.degenerate = true;
    out.pass = true;
    return out;
  }
  out.ratio = luxemburg_norm(f * g, p) / (nf * ng);
  out.pass = out.ratio <= out.bound * (1.0 + 1e-9);
  return out;
}

LogHolderReport log_holder_check(const ExponentFunction& g, std::span<const Point> samples) {
  constexpr int kLevels = 50;
  constexpr double kStart = 0.25;
  LogHolderReport out;
  out.analytic_constant = g.log_holder_constant();
  const double g0 = g.at_origin();
  const double ginf = g.at_infinity();
  std::vector<double> per_level(kLevels, 0.0);

  for (const Point& x : samples) {
    const double r = std::hypot(x[0], x[1]);
    if (r > 0.0) {
      out.origin_constant =
          std::max(out.origin_constant, std::fabs(g(x) - g0) * std::log(std::numbers::e + 1.0 / r));
      out.infinity_constant =
          std::max(out.infinity_constant, std::fabs(g(x) - ginf) * std::log(std::numbers::e + r));
    }
    // Zoom: keep halving the interval [a, b] along e1 where g varies most.
    Point a = x;
    Point b = {x[0] + kStart, x[1]};
    for (int level = 0; level < kLevels; ++level) {
      const double dist = kStart / std::ldexp(1.0, level);
      const double c = std::fabs(g(a) - g(b)) * std::log(std::numbers::e + 1.0 / dist);
      per_level[level] = std::max(per_level[level], c);
      const Point m = {0.5 * (a[0] + b[0]), x[1]};
      if (std::fabs(g(a) - g(m)) >= std::fabs(g(m) - g(b))) {
        b = m;
      } else {
        a = m;
      }
    }
  }
  out.local_constant = *std::max_element(per_level.begin(), per_level.end());
  out.local_coarse = *std::max_element(per_level.begin() + 10, per_level.begin() + 20);
  out.local_fine = *std::max_element(per_level.begin() + 40, per_level.end());

  const bool blows_up = out.local_fine > 1e-12 && out.local_fine > 1.25 * out.local_coarse;
  bool within = true;
  if (out.analytic_constant) {
    const double c = *out.analytic_constant * (1.0 + 1e-12) + 1e-15;
    within = out.origin_constant <= c && out.infinity_constant <= c;
  }
  out.pass = !blows_up && within;
  if (blows_up) {
    out.failure = "NotLogHolder";
  } else if (!within) {
    out.failure = "ConstantExceeded";
  }
  return out;
}

}  // namespace herzlab
