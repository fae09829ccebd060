#include "herzlab/herz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "herzlab/error.hpp"
#include "herzlab/parallel.hpp"
#include "herzlab/varlebesgue.hpp"

namespace herzlab {

void HerzSpaceParams::validate() const {
  if (!(p >= 1.0)) throw Error(ErrorCode::BadParams, "p must be >= 1");
  if (!(theta > 0.0)) throw Error(ErrorCode::BadParams, "theta must be positive");
  if (!(lambda >= 0.0)) throw Error(ErrorCode::BadParams, "lambda must be >= 0");
  if (!(delta2 > 0.0 && delta2 < 1.0)) throw Error(ErrorCode::BadParams, "delta2 must lie in (0, 1)");
  if (!(q.lower() >= 1.0)) throw Error(ErrorCode::BadParams, "q must satisfy q^- >= 1");
}

AnnulusPartition AnnulusPartition::build(const Dilation& d, const Grid& grid, bool homogeneous) {
  validate(grid);
  if (d.dim() != grid.dim) throw Error(ErrorCode::GridMismatch, "grid and dilation dimensions differ");
  AnnulusPartition out;
  out.grid = grid;
  out.homogeneous = homogeneous;
  const std::size_t n = grid.size();
  out.slice_of.assign(n, 0);
  constexpr int kOrigin = std::numeric_limits<int>::min();
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = grid.center(i);
    if (x[0] == 0.0 && (grid.dim == 1 || x[1] == 0.0)) {
      out.slice_of[i] = kOrigin;
      continue;
    }
    int k = d.annulus_index(x) + 1;
    if (!homogeneous) k = std::max(k, 0);
    out.slice_of[i] = k;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  if (lo > hi) lo = hi = homogeneous ? 0 : 0;  // single-cell grid centred at the origin
  for (int& k : out.slice_of) {
    if (k == kOrigin) k = homogeneous ? lo : std::max(lo, 0);
  }
  out.k_min = lo;
  out.k_max = hi;
  out.cells.assign(static_cast<std::size_t>(hi - lo + 1), {});
  for (std::size_t i = 0; i < n; ++i) {
    out.cells[static_cast<std::size_t>(out.slice_of[i] - lo)].push_back(i);
  }
  return out;
}

GridFunction annulus_slice(const GridFunction& f, const Dilation& d, int k, bool homogeneous) {
  const auto part = AnnulusPartition::build(d, f.grid(), homogeneous);
  if (k < part.k_min || k > part.k_max) {
    throw Error(ErrorCode::OutOfCoverage,
                "C_" + std::to_string(k) + " holds no cell centre of the grid (range " +
                    std::to_string(part.k_min) + ".." + std::to_string(part.k_max) + ")");
  }
  std::vector<double> v(f.size(), 0.0);
  for (std::size_t i : part.at(k)) v[i] = f[i];
  return GridFunction(f.grid(), std::move(v));
}

HerzEvaluator::HerzEvaluator(const Dilation& d, const Grid& grid, HerzSpaceParams params)
    : d_(d), grid_(grid), params_(std::move(params)) {
  params_.validate();
  partition_ = AnnulusPartition::build(d_, grid_, params_.homogeneous);
  alpha_ = params_.alpha.sample(grid_);
  q_ = params_.q.sample(grid_);
}

Sequence HerzEvaluator::terms(const GridFunction& f, WeightMode mode) const {
  require_same_grid(f.grid(), grid_);
  const double lnb = std::log(d_.b());
  const double a0 = params_.alpha.at_origin();
  const double ainf = params_.alpha.at_infinity();
  const double vol = grid_.cell_volume();
  Sequence out;
  out.offset = partition_.k_min;
  out.values.assign(static_cast<std::size_t>(partition_.count()), 0.0);
  parallel_for(out.values.size(), [&](std::size_t s) {
    const int k = partition_.k_min + static_cast<int>(s);
    const auto& cells = partition_.cells[s];
    std::vector<double> v(cells.size());
    std::vector<double> e(cells.size());
    const double frozen = k < 0 ? a0 : ainf;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::size_t i = cells[j];
      const double a = mode == WeightMode::pointwise ? alpha_[i] : frozen;
      v[j] = f[i] == 0.0 ? 0.0 : f[i] * std::exp(k * a * lnb);
      e[j] = q_[i];
    }
    out.values[s] = luxemburg_cells(v, e, vol);
  }, grid_.size() >= 32768 ? 1 : out.values.size());
  return out;
}

double HerzEvaluator::tail_bound(const GridFunction& f) const {
  require_same_grid(f.grid(), grid_);
  if (!params_.homogeneous) return 0.0;
  double big = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (partition_.slice_of[i] <= partition_.k_min + 1) big = std::max(big, std::fabs(f[i]));
  }
  if (big == 0.0) return 0.0;
  const double gamma = params_.alpha.lower() + 1.0 / params_.q.upper();
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::TailUnbounded,
                "alpha^- + 1/q^+ = " + std::to_string(gamma) + " <= 0: slices near 0 are not summable");
  }
  // Dominating sequence F b^{k gamma}, k < k_min, cut once terms drop below 1e-17 of the first.
  const double r = std::pow(d_.b(), -gamma);
  std::vector<double> seq;
  double t = big * std::pow(d_.b(), (partition_.k_min - 1) * gamma);
  if (!std::isfinite(t) || t == 0.0) return t;
  const double stop = t * 1e-17;
  while (t > stop && seq.size() < 100000) {
    seq.push_back(t);
    t *= r;
  }
  return grand_seq_sup(seq, params_.sequence()).value;
}

GrandHerzResult HerzEvaluator::grand_herz(const GridFunction& f, WeightMode mode) const {
  GrandHerzResult out;
  out.per_k_terms = terms(f, mode);
  const auto sup = grand_seq_sup(out.per_k_terms, params_.sequence());
  out.norm = sup.value;
  out.argmax_eps = sup.argmax_eps;
  out.tail_bound = tail_bound(f);
  return out;
}

HerzMorreyResult HerzEvaluator::herz_morrey(const GridFunction& f) const {
  HerzMorreyResult out;
  out.per_k_terms = terms(f);
  out.tail_bound = tail_bound(f);
  const auto& t = out.per_k_terms.values;
  const auto sp = params_.sequence();
  const double lnb = std::log(d_.b());
  bool found = false;
  // Partial sums only grow at nonzero terms while b^{-L lambda} shrinks, so
  // only L with t_L != 0 can attain the supremum.
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (t[s] == 0.0) continue;
    const int L = out.per_k_terms.offset + static_cast<int>(s);
    std::vector<double> prefix(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(s + 1));
    const auto sup = grand_seq_sup(prefix, sp);
    const double v = params_.lambda == 0.0 ? sup.value : sup.value * std::exp(-L * params_.lambda * lnb);
    if (!found || v > out.norm || (v == out.norm && sup.argmax_eps < out.argmax_eps)) {
      out.norm = v;
      out.argmax_eps = sup.argmax_eps;
      out.argmax_L = L;
      found = true;
    }
  }
  return out;
}

GrandHerzResult grand_herz_norm(const GridFunction& f, const Dilation& d, const HerzSpaceParams& params) {
  return HerzEvaluator(d, f.grid(), params).grand_herz(f);
}

double split_norm(const GridFunction& f, const Dilation& d, const HerzSpaceParams& params) {
  return HerzEvaluator(d, f.grid(), params).grand_herz(f, WeightMode::split).norm;
}

HerzMorreyResult herz_morrey_norm(const GridFunction& f, const Dilation& d, const HerzSpaceParams& params) {
  return HerzEvaluator(d, f.grid(), params).herz_morrey(f);
}

Sequence BlockDecomposition::coefficient_sequence() const {
  Sequence s;
  if (ks.empty()) return s;
  s.offset = ks.front();
  s.values.assign(static_cast<std::size_t>(ks.back() - ks.front() + 1), 0.0);
  for (std::size_t j = 0; j < ks.size(); ++j) {
    s.values[static_cast<std::size_t>(ks[j] - ks.front())] = coefficients[j];
  }
  return s;
}

namespace {

double alpha_for_block(const HerzSpaceParams& params, int k) {
  return k < 0 ? params.alpha.at_origin() : params.alpha.at_infinity();
}

}  // namespace

BlockReport block_validate(const GridFunction& b, int k, const Dilation& d, const HerzSpaceParams& params) {
  BlockReport out;
  out.k = k;
  out.restricted = k >= 0;
  const Grid& grid = b.grid();
  out.support_ok = true;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != 0.0 && !d.contains(grid.center(i), k)) {
      out.support_ok = false;
      break;
    }
  }
  out.norm = luxemburg_norm(b, params.q);
  out.bound = std::pow(d.b(), -k * alpha_for_block(params, k));
  out.norm_ok = out.norm <= out.bound * (1.0 + 1e-9);
  out.pass = out.support_ok && out.norm_ok;
  return out;
}

BlockDecomposition block_decompose(const GridFunction& f, const Dilation& d, const HerzSpaceParams& params) {
  HerzEvaluator ev(d, f.grid(), params);
  const Sequence t = ev.terms(f);
  BlockDecomposition dec;
  dec.grid = f.grid();
  dec.params = std::make_shared<const HerzSpaceParams>(params);
  const auto& part = ev.partition();
  for (std::size_t s = 0; s < t.values.size(); ++s) {
    const double lam = t.values[s];
    if (lam == 0.0) continue;
    const int k = t.offset + static_cast<int>(s);
    std::vector<double> v(f.size(), 0.0);
    for (std::size_t i : part.cells[s]) v[i] = f[i] / lam;
    GridFunction block(f.grid(), std::move(v));
    const BlockReport rep = block_validate(block, k, d, params);
    if (!rep.pass) {
      throw Error(ErrorCode::BlockBoundViolated,
                  "block " + std::to_string(k) + " has norm " + std::to_string(rep.norm) +
                      " above its bound " + std::to_string(rep.bound) +
                      (rep.support_ok ? "" : " (support leaves B_k)"));
    }
    dec.ks.push_back(k);
    dec.coefficients.push_back(lam);
    dec.blocks.push_back(std::move(block));
  }
  if (dec.ks.empty()) throw Error(ErrorCode::ZeroFunction, "f vanishes on every annulus");
  return dec;
}

GridFunction block_reconstruct(const BlockDecomposition& dec) {
  std::vector<double> v(dec.grid.size(), 0.0);
  for (std::size_t j = 0; j < dec.blocks.size(); ++j) {
    require_same_grid(dec.blocks[j].grid(), dec.grid);
    const double lam = dec.coefficients[j];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += lam * dec.blocks[j][i];
  }
  return GridFunction(dec.grid, std::move(v));
}

double seq_functional(const BlockDecomposition& dec) {
  if (dec.coefficients.empty()) return 0.0;
  const GrandSequenceParams sp = dec.params ? dec.params->sequence() : GrandSequenceParams{};
  return grand_seq_sup(dec.coefficients, sp).value;
}

HerzSpaceParams product_params(const std::vector<HerzSpaceParams>& factors) {
  if (factors.empty()) throw Error(ErrorCode::ParamMismatch, "no factors");
  HerzSpaceParams out = factors.front();
  double inv_p = 1.0 / out.p;
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (f.theta != out.theta || f.homogeneous != out.homogeneous) {
      throw Error(ErrorCode::ParamMismatch, "factors must share theta and homogeneity");
    }
    out.alpha = ExponentFunction::sum(out.alpha, f.alpha);
    out.q = ExponentFunction::harmonic_sum(out.q, f.q);
    out.lambda += f.lambda;
    inv_p += 1.0 / f.p;
  }
  out.p = 1.0 / inv_p;
  if (!(out.p >= 1.0)) {
    throw Error(ErrorCode::ParamMismatch, "derived p = " + std::to_string(out.p) + " is below 1");
  }
  return out;
}

AlgebraReport product_check(const std::vector<GridFunction>& fs, const Dilation& d,
                            const std::vector<HerzSpaceParams>& params) {
  if (fs.size() != params.size() || fs.empty()) {
    throw Error(ErrorCode::ParamMismatch, "one parameter set per factor is required");
  }
  const HerzSpaceParams target = product_params(params);
  AlgebraReport out;
  out.check = fs.size() == 2 ? "product" : "product_m";
  GridFunction prod = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) prod = prod * fs[i];

  // Pointwise Hoelder constant; exactly 1 when every q_i is constant.
  bool all_const = true;
  for (const auto& p : params) all_const = all_const && p.q.is_constant();
  if (all_const) {
    out.bound = 1.0;
  } else {
    const Grid& grid = prod.grid();
    double k = 0.0;
    for (const auto& p : params) {
      double m = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point x = grid.center(i);
        m = std::max(m, target.q(x) / p.q(x));
      }
      k += m;
    }
    out.bound = k;
  }
  out.lhs = herz_morrey_norm(prod, d, target).norm;
  out.rhs = 1.0;
  for (std::size_t i = 0; i < fs.size(); ++i) out.rhs *= herz_morrey_norm(fs[i], d, params[i]).norm;
  if (out.rhs == 0.0) {
    out.degenerate = true;
    out.pass = out.lhs == 0.0;
    return out;
  }
  out.ratio = out.lhs / out.rhs;
  out.pass = out.ratio <= out.bound * (1.0 + 1e-9);
  return out;
}

AlgebraReport product_check(const GridFunction& f, const GridFunction& g, const Dilation& d,
                            const HerzSpaceParams& params1, const HerzSpaceParams& params2) {
  return product_check(std::vector<GridFunction>{f, g}, d, {params1, params2});
}

AlgebraReport sum_check(const std::vector<GridFunction>& fs, const Dilation& d,
                        const HerzSpaceParams& params) {
  if (fs.empty()) throw Error(ErrorCode::ParamMismatch, "no summands");
  HerzEvaluator ev(d, fs.front().grid(), params);
  AlgebraReport out;
  out.check = fs.size() == 2 ? "sum" : "sum_m";
  GridFunction total = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) total = total + fs[i];
  out.lhs = ev.herz_morrey(total).norm;
  out.rhs = 0.0;
  for (const auto& f : fs) out.rhs += ev.herz_morrey(f).norm;
  if (out.rhs == 0.0) {
    out.degenerate = true;
    out.pass = out.lhs == 0.0;
    return out;
  }
  out.ratio = out.lhs / out.rhs;
  out.pass = out.ratio <= 1.0 + 1e-9;
  return out;
}

AlgebraReport sum_check(const GridFunction& f, const GridFunction& g, const Dilation& d,
                        const HerzSpaceParams& params) {
  return sum_check(std::vector<GridFunction>{f, g}, d, params);
}

}  // namespace herzlab
