#include "herzlab/operators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "exact_sum.hpp"
#include "herzlab/error.hpp"
#include "herzlab/parallel.hpp"

namespace herzlab {

std::string OperatorSpec::name() const {
  switch (kind) {
    case OperatorKind::identity: return "identity";
    case OperatorKind::hardy: return "hardy";
    case OperatorKind::truncated_riesz: return "truncated_riesz";
    case OperatorKind::maximal: return ball == BallShape::euclidean ? "maximal_euclidean" : "maximal";
  }
  return "unknown";
}

OperatorSpec parse_operator(const std::string& text) {
  OperatorSpec op;
  if (text == "identity") {
    op.kind = OperatorKind::identity;
  } else if (text == "hardy") {
    op.kind = OperatorKind::hardy;
  } else if (text.rfind("riesz", 0) == 0 || text.rfind("truncated_riesz", 0) == 0) {
    op.kind = OperatorKind::truncated_riesz;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
      try {
        op.cutoff = std::stod(text.substr(colon + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigError, "bad riesz cutoff in '" + text + "'");
      }
    }
  } else if (text == "maximal") {
    op.kind = OperatorKind::maximal;
  } else if (text == "maximal-euclid" || text == "maximal_euclidean") {
    op.kind = OperatorKind::maximal;
    op.ball = BallShape::euclidean;
  } else {
    throw Error(ErrorCode::ConfigError, "unknown operator '" + text + "'");
  }
  return op;
}

GridFunction hardy_apply(const GridFunction& f, const Dilation& d) {
  const Grid& grid = f.grid();
  const auto part = AnnulusPartition::build(d, grid, true);
  // P_k = int over B_k of f, exactly summed then scaled once.
  std::vector<double> prefix(static_cast<std::size_t>(part.count()), 0.0);
  detail::ExactSum acc;
  for (int s = 0; s < part.count(); ++s) {
    for (std::size_t i : part.cells[static_cast<std::size_t>(s)]) {
      if (f[i] != 0.0) acc.add(f[i]);
    }
    prefix[static_cast<std::size_t>(s)] = acc.value() * grid.cell_volume();
  }
  const double lnb = std::log(d.b());
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = grid.center(i);
    if (x[0] == 0.0 && x[1] == 0.0) continue;
    const int k = part.slice_of[i];  // rho(x) = b^{k-1}
    const double p = prefix[static_cast<std::size_t>(k - part.k_min)];
    out[i] = p == 0.0 ? 0.0 : p * std::exp((1 - k) * lnb);
  }
  return GridFunction(grid, std::move(out));
}

double riesz_min_cutoff(const Dilation& d, const Grid& grid) {
  const double h = grid.spacing();
  double m = d.rho({h, 0.0});
  if (grid.dim == 2) m = std::max(m, d.rho({0.0, h}));
  return m;
}

GridFunction truncated_riesz_apply(const GridFunction& f, const Dilation& d, double cutoff) {
  const Grid& grid = f.grid();
  const double floor_cut = riesz_min_cutoff(d, grid);
  if (!(cutoff >= floor_cut)) {
    throw Error(ErrorCode::CutoffTooSmall, "cutoff " + std::to_string(cutoff) +
                                               " is below the one-cell scale " +
                                               std::to_string(floor_cut));
  }
  const int n = grid.resolution;
  const double h = grid.spacing();
  const int span = 2 * n - 1;
  // Kernel over grid offsets; centre differences are exact multiples of h.
  std::vector<double> kernel(grid.dim == 1 ? span : static_cast<std::size_t>(span) * span, 0.0);
  for (int oy = (grid.dim == 1 ? 0 : -(n - 1)); oy <= (grid.dim == 1 ? 0 : n - 1); ++oy) {
    for (int ox = -(n - 1); ox <= n - 1; ++ox) {
      const double r = d.rho({ox * h, oy * h});
      const std::size_t slot = static_cast<std::size_t>(ox + n - 1) +
                               (grid.dim == 1 ? 0 : static_cast<std::size_t>(oy + n - 1) * span);
      kernel[slot] = r >= cutoff ? 1.0 / r : 0.0;
    }
  }
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j] != 0.0) nz.push_back(j);
  }
  const double vol = grid.cell_volume();
  std::vector<double> out(f.size(), 0.0);
  parallel_for(f.size(), [&](std::size_t i) {
    const int ix = grid.axis_index(i, 0);
    const int iy = grid.dim == 1 ? 0 : grid.axis_index(i, 1);
    double s = 0.0;
    for (std::size_t j : nz) {
      const int ox = ix - grid.axis_index(j, 0);
      const int oy = grid.dim == 1 ? 0 : iy - grid.axis_index(j, 1);
      const std::size_t slot = static_cast<std::size_t>(ox + n - 1) +
                               (grid.dim == 1 ? 0 : static_cast<std::size_t>(oy + n - 1) * span);
      s += f[j] * kernel[slot];
    }
    out[i] = s * vol;
  }, 256);
  return GridFunction(grid, std::move(out));
}

namespace {

struct RowSpan {
  int dy;
  int lo;
  int hi;
};

struct Stencil {
  std::vector<RowSpan> rows;
  double count = 0.0;
};

Eigen::Matrix2d stencil_form(const Dilation& d, int k, BallShape ball) {
  Eigen::Matrix2d q = Eigen::Matrix2d::Identity();
  if (ball == BallShape::anisotropic) {
    const Eigen::MatrixXd f = d.ball_form(k);
    if (d.dim() == 1) {
      q(0, 0) = f(0, 0);
    } else {
      q = f;
    }
  } else {
    const double omega = d.dim() == 1 ? 2.0 : std::numbers::pi;
    const double r = std::pow(std::pow(d.b(), k) / omega, 1.0 / d.dim());
    q /= r * r;
  }
  return q;
}

// Offsets o (in cells) with (o h)^T Q (o h) < 1, one span per row. Rows and
// columns beyond +-limit are never needed on an N-cell grid.
Stencil make_stencil(const Eigen::Matrix2d& q, double h, int dim, int limit) {
  auto inside = [&](int dx, int dy) {
    const double x = dx * h;
    const double y = dy * h;
    return q(0, 0) * x * x + 2.0 * q(0, 1) * x * y + q(1, 1) * y * y < 1.0;
  };
  Stencil st;
  int ymax = 0;
  if (dim == 2) {
    const double det = q(0, 0) * q(1, 1) - q(0, 1) * q(0, 1);
    ymax = static_cast<int>(std::ceil(std::sqrt(q(0, 0) / det) / h)) + 1;
  }
  for (int dy = -ymax; dy <= ymax; ++dy) {
    const double y = dy * h;
    const double centre = dim == 2 ? -q(0, 1) * y / q(0, 0) : 0.0;
    const double disc = (1.0 - (q(1, 1) - q(0, 1) * q(0, 1) / q(0, 0)) * y * y) / q(0, 0);
    if (disc <= 0.0 && !inside(static_cast<int>(std::lround(centre / h)), dy)) continue;
    const double half = std::sqrt(std::max(disc, 0.0));
    int lo = static_cast<int>(std::ceil((centre - half) / h));
    int hi = static_cast<int>(std::floor((centre + half) / h));
    while (lo <= hi && !inside(lo, dy)) ++lo;
    while (inside(lo - 1, dy)) --lo;
    while (hi >= lo && !inside(hi, dy)) --hi;
    while (inside(hi + 1, dy)) ++hi;
    if (lo > hi) continue;
    st.count += hi - lo + 1;
    if (std::abs(dy) > limit) continue;
    st.rows.push_back({dy, std::max(lo, -limit), std::min(hi, limit)});
  }
  return st;
}

}  // namespace

std::pair<int, int> maximal_default_krange(const Dilation& d, const Grid& grid, BallShape ball) {
  const double h = grid.spacing();
  const int n = grid.resolution;
  auto count = [&](int k) { return make_stencil(stencil_form(d, k, ball), h, grid.dim, n).count; };
  int lo = 0;
  if (count(lo) > 1.0) {
    while (count(lo) > 1.0) --lo;
  } else {
    while (count(lo + 1) <= 1.0) ++lo;
  }
  int hi = 0;
  if (ball == BallShape::anisotropic) {
    hi = d.covering_index(2.0 * grid.half_width);
  } else {
    const double omega = grid.dim == 1 ? 2.0 : std::numbers::pi;
    const double r = 2.0 * grid.half_width * std::sqrt(static_cast<double>(grid.dim));
    hi = static_cast<int>(std::ceil(std::log(omega * std::pow(r, grid.dim)) / std::log(d.b())));
  }
  return {lo, std::max(lo, hi)};
}

GridFunction maximal_apply(const GridFunction& f, const Dilation& d,
                           std::optional<std::pair<int, int>> krange, BallShape ball) {
  const Grid& grid = f.grid();
  const auto [k_lo, k_hi] = krange ? *krange : maximal_default_krange(d, grid, ball);
  if (k_lo > k_hi) throw Error(ErrorCode::BadParams, "empty maximal ball range");
  const int n = grid.resolution;
  const int rows = grid.dim == 1 ? 1 : n;
  // Row prefix sums of |f|: pre[r * (n + 1) + c] = sum_{c' < c} |f(c', r)|.
  std::vector<double> pre(static_cast<std::size_t>(rows) * (n + 1), 0.0);
  for (int r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) {
      s += std::fabs(f[grid.flat(c, r)]);
      pre[static_cast<std::size_t>(r) * (n + 1) + c + 1] = s;
    }
  }
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::fabs(f[i]);
  for (int k = k_lo; k <= k_hi; ++k) {
    const Stencil st = make_stencil(stencil_form(d, k, ball), grid.spacing(), grid.dim, n);
    if (st.count <= 1.0) continue;  // single-cell average is |f| itself
    parallel_for(f.size(), [&](std::size_t i) {
      const int ix = grid.axis_index(i, 0);
      const int iy = grid.dim == 1 ? 0 : grid.axis_index(i, 1);
      double s = 0.0;
      for (const RowSpan& row : st.rows) {
        const int r = iy + row.dy;
        if (r < 0 || r >= rows) continue;
        const int a = std::max(ix + row.lo, 0);
        const int b = std::min(ix + row.hi, n - 1);
        if (a > b) continue;
        const double* p = &pre[static_cast<std::size_t>(r) * (n + 1)];
        s += p[b + 1] - p[a];
      }
      out[i] = std::max(out[i], std::max(s, 0.0) / st.count);
    }, 1024);
  }
  return GridFunction(grid, std::move(out));
}

GridFunction apply(const OperatorSpec& op, const GridFunction& f, const Dilation& d) {
  switch (op.kind) {
    case OperatorKind::identity: return f;
    case OperatorKind::hardy: return hardy_apply(f, d);
    case OperatorKind::truncated_riesz: {
      const double cutoff = op.cutoff > 0.0 ? op.cutoff : riesz_min_cutoff(d, f.grid());
      return truncated_riesz_apply(f, d, cutoff);
    }
    case OperatorKind::maximal: return maximal_apply(f, d, op.krange, op.ball);
  }
  return f;
}

namespace {

double space_norm(const HerzEvaluator& ev, const GridFunction& f) {
  return ev.params().lambda == 0.0 ? ev.grand_herz(f).norm : ev.herz_morrey(f).norm;
}

}  // namespace

double op_ratio(const OperatorSpec& op, const GridFunction& f, const Dilation& d,
                const HerzSpaceParams& params) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroFunction, "operator ratio of the zero function");
  HerzEvaluator ev(d, f.grid(), params);
  const double den = space_norm(ev, f);
  if (den == 0.0) throw Error(ErrorCode::ZeroFunction, "f has zero norm on the grid");
  return space_norm(ev, apply(op, f, d)) / den;
}

SizeCheckReport hardy_size_check(const GridFunction& f, const Dilation& d) {
  SizeCheckReport out;
  out.check = "hardy_size";
  const GridFunction hf = hardy_apply(f, d);
  const double l1 = f.l1_norm();
  const Grid& grid = f.grid();
  out.pass = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = grid.center(i);
    if (x[0] == 0.0 && x[1] == 0.0) continue;
    const double r = d.rho(x);
    ++out.points;
    if (l1 > 0.0) out.constant = std::max(out.constant, std::fabs(hf[i]) * r / l1);
    const double excess = std::fabs(hf[i]) - l1 / r * (1.0 + 1e-12);
    out.max_violation = std::max(out.max_violation, excess);
    if (excess > 0.0) out.pass = false;
  }
  return out;
}

SizeCheckReport riesz_kernel_check(const GridFunction& f, const Dilation& d, double cutoff,
                                   std::size_t samples, std::uint64_t seed) {
  SizeCheckReport out;
  out.check = "riesz_kernel";
  const GridFunction tf = truncated_riesz_apply(f, d, cutoff);
  const Grid& grid = f.grid();
  std::vector<std::size_t> off;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) off.push_back(i);
  }
  out.pass = true;
  if (off.empty()) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, off.size() - 1);
  const double vol = grid.cell_volume();
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t i = off[pick(rng)];
    const Point x = grid.center(i);
    double dominating = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f[j] == 0.0) continue;
      const Point y = grid.center(j);
      dominating += std::fabs(f[j]) / d.rho({x[0] - y[0], x[1] - y[1]});
    }
    dominating *= vol;
    ++out.points;
    if (dominating > 0.0) out.constant = std::max(out.constant, std::fabs(tf[i]) / dominating);
    const double excess = std::fabs(tf[i]) - dominating * (1.0 + 1e-12);
    out.max_violation = std::max(out.max_violation, excess);
    if (excess > 0.0) out.pass = false;
  }
  return out;
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::stringstream ss(text);
      std::string a, b, c;
      std::getline(ss, a, ':');
      std::getline(ss, b, ':');
      std::getline(ss, c, ':');
      const double start = std::stod(a);
      const double stop = std::stod(b);
      const double step = std::stod(c);
      if (!(step > 0.0)) throw Error(ErrorCode::ConfigError, "range step must be positive");
      const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
      for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, "cannot parse range '" + text + "'");
  }
  return out;
}

SweepTable boundedness_sweep(const OperatorSpec& op, const Dilation& d,
                             const std::vector<GridFunction>& family, const SweepOptions& options) {
  if (options.alphas.empty() || options.lambdas.empty() || family.empty()) {
    throw Error(ErrorCode::EmptyGrid, "sweep needs alphas, lambdas and a nonempty family");
  }
  const Grid grid = family.front().grid();
  SweepTable table;
  table.op = op.name();
  table.delta2 = options.base.delta2;
  table.large_size = family.size();
  table.small_size = std::min(options.small_size, family.size());

  std::vector<GridFunction> images(family.size(), GridFunction::zeros(grid));
  parallel_for(family.size(), [&](std::size_t m) { images[m] = apply(op, family[m], d); });

  table.pass = true;
  for (double lam_in : options.lambdas) {
    for (double alpha : options.alphas) {
      SweepCell cell;
      cell.alpha = alpha;
      cell.lambda = options.lambda_relative ? lam_in * alpha : lam_in;
      cell.admissible = alpha > 0.0 && alpha < options.base.delta2 &&
                        (cell.lambda == 0.0 || 2.0 * cell.lambda < alpha);
      HerzSpaceParams params = options.base;
      params.alpha = ExponentFunction::constant(alpha);
      params.lambda = cell.lambda;
      HerzEvaluator ev(d, grid, params);
      std::vector<double> ratio(family.size(), 0.0);
      parallel_for(family.size(), [&](std::size_t m) {
        const double den = space_norm(ev, family[m]);
        ratio[m] = den > 0.0 ? space_norm(ev, images[m]) / den : 0.0;
      });
      for (std::size_t m = 0; m < family.size(); ++m) {
        if (m < table.small_size) cell.sup_small = std::max(cell.sup_small, ratio[m]);
        cell.sup_large = std::max(cell.sup_large, ratio[m]);
      }
      cell.growth = cell.sup_small > 0.0 ? cell.sup_large / cell.sup_small
                                         : std::numeric_limits<double>::infinity();
      cell.stable = cell.growth < options.stable_threshold;
      if (cell.admissible && !cell.stable) table.pass = false;
      table.cells.push_back(cell);
    }
  }
  return table;
}

std::string SweepTable::to_csv() const {
  auto num = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  std::string out = "alpha,lambda,admissible,sup_small,sup_large,growth,stable\n";
  for (const auto& c : cells) {
    out += num(c.alpha) + ',' + num(c.lambda) + ',' + (c.admissible ? '1' : '0') + ',' + num(c.sup_small) + ',' +
           num(c.sup_large) + ',' + num(c.growth) + ',' + (c.stable ? '1' : '0') + '\n';
  }
  return out;
}

std::string SweepTable::to_svg() const {
  std::vector<double> alphas, lambdas;
  for (const auto& c : cells) {
    if (std::find(alphas.begin(), alphas.end(), c.alpha) == alphas.end()) alphas.push_back(c.alpha);
    if (std::find(lambdas.begin(), lambdas.end(), c.lambda) == lambdas.end()) lambdas.push_back(c.lambda);
  }
  constexpr int cw = 40, ch = 24, margin = 60;
  const int w = margin + cw * static_cast<int>(alphas.size()) + 10;
  const int h = margin + ch * static_cast<int>(lambdas.size()) + 10;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << "<text x=\"4\" y=\"14\" font-size=\"11\">" << op << ": sup ratio growth (x: alpha, y: lambda)</text>\n";
  for (const auto& c : cells) {
    const auto ia = std::find(alphas.begin(), alphas.end(), c.alpha) - alphas.begin();
    const auto il = std::find(lambdas.begin(), lambdas.end(), c.lambda) - lambdas.begin();
    // growth 1 -> white, >= threshold-ish 2 -> red.
    const double t = std::clamp(std::isfinite(c.growth) ? (c.growth - 1.0) : 1.0, 0.0, 1.0);
    const int gb = static_cast<int>(255 * (1.0 - t));
    os << "<rect x=\"" << margin + cw * ia << "\" y=\"" << margin + ch * il << "\" width=\"" << cw
       << "\" height=\"" << ch << "\" fill=\"rgb(255," << gb << ',' << gb << ")\" stroke=\""
       << (c.admissible ? "black" : "#bbb") << "\"/>\n";
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    os << "<text x=\"" << margin + cw * static_cast<int>(i) + 2 << "\" y=\"" << margin - 4
       << "\" font-size=\"9\">" << std::setprecision(3) << alphas[i] << "</text>\n";
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    os << "<text x=\"2\" y=\"" << margin + ch * static_cast<int>(i) + 15 << "\" font-size=\"9\">"
       << std::setprecision(3) << lambdas[i] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace herzlab
