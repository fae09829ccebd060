#include "herzlab/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "herzlab/error.hpp"
#include "herzlab/parallel.hpp"
#include "herzlab/varlebesgue.hpp"

namespace herzlab {

namespace {

double quad_norm(const Eigen::MatrixXd& q, const Point& x, int dim) {
  if (dim == 1) return std::sqrt(q(0, 0) * x[0] * x[0]);
  return std::sqrt(q(0, 0) * x[0] * x[0] + 2.0 * q(0, 1) * x[0] * x[1] + q(1, 1) * x[1] * x[1]);
}

double bump_profile(double t) { return t < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; }

}  // namespace

Mollifier Mollifier::make(const Dilation& d, double support_radius) {
  if (!(support_radius > 0.0 && support_radius <= 1.0)) {
    throw Error(ErrorCode::BadParams, "mollifier support radius must lie in (0, 1]");
  }
  // {|x|_Q < t} has volume t^n, so int g(|x|_Q) dx = n int_0^r g(t) t^{n-1} dt.
  const int n = d.dim();
  auto integrand = [&](double t) {
    return n * bump_profile(t / support_radius) * (n == 1 ? 1.0 : t);
  };
  const double mass =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, support_radius, 15, 1e-15);
  return Mollifier(d, support_radius, 1.0 / mass);
}

double Mollifier::operator()(const Point& x) const {
  const double t = quad_norm(d_.unit_form(), x, d_.dim()) / radius_;
  return norm_ * bump_profile(t);
}

double Mollifier::seminorm_budget(const Grid& grid, int m_max, int order) const {
  const double h = 1e-4;
  double best = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.center(i);
    if ((*this)(x) == 0.0) continue;
    const double r = d_.rho(x);
    std::vector<double> derivs{std::fabs((*this)(x))};
    for (int axis = 0; axis < grid.dim && order >= 1; ++axis) {
      Point p = x, m = x;
      p[axis] += h;
      m[axis] -= h;
      derivs.push_back(std::fabs(((*this)(p) - (*this)(m)) / (2.0 * h)));
      if (order >= 2) derivs.push_back(std::fabs(((*this)(p) - 2.0 * (*this)(x) + (*this)(m)) / (h * h)));
    }
    for (double dv : derivs) {
      for (int mm = 0; mm <= m_max; ++mm) best = std::max(best, std::pow(r, mm) * dv);
    }
  }
  return best;
}

std::pair<int, int> mollifier_scales(const Mollifier& phi, const Grid& grid) {
  const Dilation& d = phi.dilation();
  const double r = phi.support_radius();
  const double h = grid.spacing();
  int lo = 0;
  while (r * d.ball_min_width(lo) >= 4.0 * h) --lo;
  while (r * d.ball_min_width(lo) < 4.0 * h) ++lo;
  int hi = lo - 1;
  while (0.5 * r * d.ball_diameter(hi + 1) <= grid.half_width) ++hi;
  return {lo, hi};
}

GridFunction dilate_phi(const Mollifier& phi, const Grid& grid, int k) {
  const Dilation& d = phi.dilation();
  const double r = phi.support_radius();
  if (r * d.ball_min_width(k) < 4.0 * grid.spacing()) {
    throw Error(ErrorCode::UnresolvableScale,
                "phi_" + std::to_string(k) + " spans fewer than four cells");
  }
  if (0.5 * r * d.ball_diameter(k) > grid.half_width) {
    throw Error(ErrorCode::UnresolvableScale, "phi_" + std::to_string(k) + " leaves the box");
  }
  const Eigen::MatrixXd qk = d.ball_form(k);
  const double scale = phi.normaliser() * std::pow(d.b(), -k);
  return GridFunction::sample(grid, [&](const Point& x) {
    return scale * bump_profile(quad_norm(qk, x, grid.dim) / r);
  });
}

GridFunction radial_maximal(const GridFunction& f, const Mollifier& phi,
                            std::optional<std::pair<int, int>> krange) {
  const Grid& grid = f.grid();
  const Dilation& d = phi.dilation();
  const auto scales = mollifier_scales(phi, grid);
  const auto [k_lo, k_hi] = krange ? *krange : scales;
  if (k_lo < scales.first) {
    throw Error(ErrorCode::UnresolvableScale,
                "phi_" + std::to_string(k_lo) + " spans fewer than four cells");
  }
  const int n = grid.resolution;
  const double h = grid.spacing();
  const double r = phi.support_radius();
  const double vol = grid.cell_volume();
  std::vector<double> out(f.size(), 0.0);
  struct Tap {
    int ox;
    int oy;
    double w;
  };
  for (int k = k_lo; k <= k_hi; ++k) {
    const Eigen::MatrixXd qk = d.ball_form(k);
    const double scale = phi.normaliser() * std::pow(d.b(), -k) * vol;
    const int reach = std::min(n - 1, static_cast<int>(std::ceil(0.5 * r * d.ball_diameter(k) / h)) + 1);
    std::vector<Tap> taps;
    for (int oy = (grid.dim == 1 ? 0 : -reach); oy <= (grid.dim == 1 ? 0 : reach); ++oy) {
      for (int ox = -reach; ox <= reach; ++ox) {
        const double w = bump_profile(quad_norm(qk, {ox * h, oy * h}, grid.dim) / r);
        if (w > 0.0) taps.push_back({ox, oy, scale * w});
      }
    }
    parallel_for(f.size(), [&](std::size_t i) {
      const int ix = grid.axis_index(i, 0);
      const int iy = grid.dim == 1 ? 0 : grid.axis_index(i, 1);
      double s = 0.0;
      for (const Tap& t : taps) {
        const int jx = ix - t.ox;
        const int jy = iy - t.oy;
        if (jx < 0 || jx >= n || jy < 0 || (grid.dim == 2 && jy >= n)) continue;
        s += f[grid.flat(jx, jy)] * t.w;
      }
      out[i] = std::max(out[i], std::fabs(s));
    }, 256);
  }
  return GridFunction(grid, std::move(out));
}

namespace {

std::vector<std::pair<int, int>> multi_indices(int s, int dim) {
  std::vector<std::pair<int, int>> out;
  for (int total = 0; total <= s; ++total) {
    if (dim == 1) {
      out.push_back({total, 0});
    } else {
      for (int b1 = 0; b1 <= total; ++b1) out.push_back({total - b1, b1});
    }
  }
  return out;
}

double block_alpha(const HerzSpaceParams& params, int k) {
  return k < 0 ? params.alpha.at_origin() : params.alpha.at_infinity();
}

}  // namespace

AtomReport atom_validate(const GridFunction& a, int k, const Dilation& d,
                         const HerzSpaceParams& params, int s, bool require_restricted) {
  if (s < 0) throw Error(ErrorCode::BadParams, "moment order must be >= 0");
  AtomReport out;
  out.k = k;
  out.s = s;
  const Grid& grid = a.grid();
  out.support_ok = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0.0 && !d.contains(grid.center(i), k)) {
      out.support_ok = false;
      break;
    }
  }
  out.norm = luxemburg_norm(a, params.q);
  out.bound = std::pow(d.ball_volume(k), -block_alpha(params, k));
  out.norm_ok = out.norm <= out.bound * (1.0 + 1e-9);

  const double l1 = a.l1_norm();
  out.moment_tolerance = 1e-8 * l1;
  out.moments_ok = true;
  for (const auto& [b0, b1] : multi_indices(s, grid.dim)) {
    double m = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) continue;
      const Point x = grid.center(i);
      const double term = a[i] * std::pow(x[0], b0) * (grid.dim == 2 ? std::pow(x[1], b1) : 1.0);
      // Neumaier summation keeps cancelling moments at rounding level.
      const double t = m + term;
      comp += std::fabs(m) >= std::fabs(term) ? (m - t) + term : (term - t) + m;
      m = t;
    }
    m = (m + comp) * grid.cell_volume();
    out.moments.push_back({b0, b1, m});
    if (std::fabs(m) > out.moment_tolerance) out.moments_ok = false;
  }
  out.restricted = k >= 0;
  out.restricted_ok = !require_restricted || out.restricted;
  const double alpha = std::max(params.alpha.at_origin(), params.alpha.at_infinity());
  out.s_min = static_cast<int>(
      std::floor((alpha - params.delta2) * std::log(d.b()) / std::log(d.lambda_minus())));
  out.s_admissible = s >= out.s_min;
  out.pass = out.support_ok && out.norm_ok && out.moments_ok && out.restricted_ok;
  return out;
}

Atom atom_make(AtomKind kind, int k, int s, const Dilation& d, const Grid& grid,
               const HerzSpaceParams& params) {
  if (s < 0) throw Error(ErrorCode::BadParams, "moment order must be >= 0");
  if (s > 4) throw Error(ErrorCode::IllConditioned, "moment order above 4 is not supported");
  if (kind == AtomKind::haar && s > 0) {
    throw Error(ErrorCode::InvalidAtom, "the Haar atom only has a vanishing mean (s = 0)");
  }
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (d.contains(grid.center(i), k)) cells.push_back(i);
  }
  if (cells.empty()) throw Error(ErrorCode::EmptyBall, "B_" + std::to_string(k) + " holds no cell");

  std::vector<double> v(grid.size(), 0.0);
  if (kind == AtomKind::haar) {
    for (std::size_t i : cells) v[i] = grid.center(i)[0] < 0.0 ? 1.0 : -1.0;
  } else {
    // a(x) = h(x) - h(-x) on cells paired with their mirror image through the
    // origin. Even moments cancel by symmetry and the values come in exact
    // +- pairs, so an exactly summed mean is exactly zero; h only needs its
    // odd moments removed.
    const int n = grid.resolution;
    auto mirror = [&](std::size_t i) {
      const int i0 = n - 1 - grid.axis_index(i, 0);
      return grid.dim == 1 ? grid.flat(i0) : grid.flat(i0, n - 1 - grid.axis_index(i, 1));
    };
    std::vector<std::size_t> paired;
    for (std::size_t i : cells) {
      const std::size_t m = mirror(i);
      if (m != i && d.contains(grid.center(m), k)) paired.push_back(i);
    }
    std::vector<std::pair<int, int>> basis_idx;
    for (const auto& b : multi_indices(s, grid.dim)) {
      if ((b.first + b.second) % 2 == 1) basis_idx.push_back(b);
    }
    if (paired.size() <= 2 * basis_idx.size() + 2) {
      throw Error(ErrorCode::IllConditioned, "too few cells in B_k for the moment system");
    }
    const Eigen::MatrixXd& q = d.unit_form();
    const Point u0 = {0.3 / std::sqrt(q(0, 0)), 0.0};
    const double bump_r = 0.5;
    // Work in y = A^{-k} x, where B_k becomes the unit ellipsoid.
    std::vector<Point> ys(paired.size());
    for (std::size_t c = 0; c < paired.size(); ++c) {
      Point y = grid.center(paired[c]);
      for (int t = 0; t < k; ++t) y = d.apply_inverse(y);
      for (int t = 0; t > k; --t) y = d.apply(y);
      ys[c] = y;
    }
    Eigen::VectorXd g(static_cast<Eigen::Index>(paired.size()));
    for (std::size_t c = 0; c < paired.size(); ++c) {
      const Point dy = {ys[c][0] - u0[0], ys[c][1] - u0[1]};
      g[static_cast<Eigen::Index>(c)] = bump_profile(quad_norm(q, dy, grid.dim) / bump_r);
    }
    // Orthonormal odd-polynomial basis under the cell inner product (two
    // passes of modified Gram-Schmidt).
    std::vector<Eigen::VectorXd> basis;
    for (const auto& [b0, b1] : basis_idx) {
      Eigen::VectorXd p(static_cast<Eigen::Index>(paired.size()));
      for (std::size_t c = 0; c < paired.size(); ++c) {
        p[static_cast<Eigen::Index>(c)] =
            std::pow(ys[c][0], b0) * (grid.dim == 2 ? std::pow(ys[c][1], b1) : 1.0);
      }
      const double before = p.norm();
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& e : basis) p -= e.dot(p) * e;
      }
      const double after = p.norm();
      if (!(after > 1e-10 * before)) {
        throw Error(ErrorCode::IllConditioned, "monomials are numerically dependent on B_k");
      }
      basis.push_back(p / after);
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : basis) g -= e.dot(g) * e;
    }
    std::vector<double> h(grid.size(), 0.0);
    for (std::size_t c = 0; c < paired.size(); ++c) h[paired[c]] = g[static_cast<Eigen::Index>(c)];
    for (std::size_t i : paired) v[i] = h[i] - h[mirror(i)];
  }
  GridFunction raw(grid, std::move(v));
  const double norm = luxemburg_norm(raw, params.q);
  if (!(norm > 0.0)) throw Error(ErrorCode::IllConditioned, "moment correction removed the bump");
  const double bound = std::pow(d.ball_volume(k), -block_alpha(params, k));
  Atom atom{raw.scaled(bound / norm), k, s, kind, std::make_shared<const HerzSpaceParams>(params)};
  return atom;
}

AtomicSumReport atomic_sum_check(const std::vector<Atom>& atoms, const std::vector<double>& lambdas,
                                 const Dilation& d, const HerzSpaceParams& params,
                                 const Mollifier& phi) {
  if (atoms.size() != lambdas.size()) {
    throw Error(ErrorCode::BadParams, "one coefficient per atom is required");
  }
  if (atoms.empty()) throw Error(ErrorCode::InvalidAtom, "no atoms");
  AtomicSumReport out;
  const Grid grid = atoms.front().data.grid();
  std::vector<double> v(grid.size(), 0.0);
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const Atom& a = atoms[j];
    require_same_grid(a.data.grid(), grid);
    const AtomReport rep = atom_validate(a.data, a.k, d, params, a.s);
    if (!rep.pass) throw Error(ErrorCode::InvalidAtom, "atom " + std::to_string(j) + " fails validation");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += lambdas[j] * a.data[i];
  }
  out.coefficient_norm = grand_seq_sup(lambdas, params.sequence()).value;
  if (out.coefficient_norm == 0.0) {
    out.degenerate = true;
    out.pass = true;
    return out;
  }
  const GridFunction f(grid, std::move(v));
  out.herz_of_maximal = grand_herz_norm(radial_maximal(f, phi), d, params).norm;
  out.ratio = out.herz_of_maximal / out.coefficient_norm;
  out.pass = std::isfinite(out.ratio);
  return out;
}

FarFieldReport size_condition_check(const OperatorSpec& op, const Atom& atom, const Dilation& d) {
  const GridFunction& a = atom.data;
  const double l1 = a.l1_norm();
  if (std::fabs(a.integral()) > 1e-8 * l1) {
    throw Error(ErrorCode::NonZeroMean, "atom mean " + std::to_string(a.integral()) + " is not zero");
  }
  FarFieldReport out;
  const GridFunction ta = apply(op, a, d);
  const Grid& grid = a.grid();
  const double far = std::pow(d.b(), atom.k + d.w());
  out.exact_zero = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point x = grid.center(i);
    if (x[0] == 0.0 && x[1] == 0.0) continue;
    const double r = d.rho(x);
    if (r < far) continue;
    ++out.points;
    if (ta[i] != 0.0) out.exact_zero = false;
    if (l1 > 0.0) out.constant = std::max(out.constant, std::fabs(ta[i]) * r * r / l1);
  }
  out.pass = out.points > 0 && std::isfinite(out.constant);
  return out;
}

}  // namespace herzlab
