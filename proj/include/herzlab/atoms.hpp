#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "herzlab/dilation.hpp"
#include "herzlab/grandseq.hpp"
#include "herzlab/grid.hpp"
#include "herzlab/herz.hpp"
#include "herzlab/operators.hpp"

namespace herzlab {

/// Fixed smooth bump phi(x) = c exp(-1 / (1 - (|x|_Q / r)^2)) supported in
/// r * Delta with r = 0.9, normalised to integrate to one.
///
/// The radial maximal function built from it is a lower proxy for the grand
/// maximal function: it uses this single phi instead of a supremum over a
/// Schwartz-seminorm ball.
class Mollifier {
 public:
  static Mollifier make(const Dilation& d, double support_radius = 0.9);

  double operator()(const Point& x) const;
  double support_radius() const noexcept { return radius_; }
  double normaliser() const noexcept { return norm_; }
  const Dilation& dilation() const noexcept { return d_; }

  /// sup rho(x)^m |d^beta phi(x)| over grid points inside the support, by
  /// central differences, maximised over m <= m_max and |beta| <= order.
  double seminorm_budget(const Grid& grid, int m_max, int order) const;

 private:
  Mollifier(Dilation d, double radius, double norm) : d_(std::move(d)), radius_(radius), norm_(norm) {}
  Dilation d_;
  double radius_;
  double norm_;
};

/// phi_k(x) = b^{-k} phi(A^{-k} x) sampled on the grid. Throws UnresolvableScale
/// when supp phi_k spans fewer than four cells or leaves the box.
GridFunction dilate_phi(const Mollifier& phi, const Grid& grid, int k);

/// Scales at which phi_k is resolvable by the grid (as a convolution stencil).
std::pair<int, int> mollifier_scales(const Mollifier& phi, const Grid& grid);

/// max over k of |f * phi_k| by direct discrete convolution. Throws
/// UnresolvableScale for a k below the resolvable range.
GridFunction radial_maximal(const GridFunction& f, const Mollifier& phi,
                            std::optional<std::pair<int, int>> krange = std::nullopt);

struct MomentEntry {
  int beta0 = 0;
  int beta1 = 0;
  double value = 0.0;
};

struct AtomReport {
  int k = 0;
  int s = 0;
  bool support_ok = false;
  double norm = 0.0;
  double bound = 0.0;
  bool norm_ok = false;
  std::vector<MomentEntry> moments;
  double moment_tolerance = 0.0;
  bool moments_ok = false;
  bool restricted = false;
  bool restricted_ok = true;
  /// floor((max(alpha(0), alpha_inf) - delta2) ln b / ln lambda_-).
  int s_min = 0;
  bool s_admissible = false;
  bool pass = false;
};

/// Support in B_k, ||a||_{q(.)} <= |B_k|^{-alpha_k}, moments up to order s
/// within 1e-8 ||a||_1 and, when requested, k >= 0.
AtomReport atom_validate(const GridFunction& a, int k, const Dilation& d,
                         const HerzSpaceParams& params, int s, bool require_restricted = false);

enum class AtomKind { haar, bump_corrected };

struct Atom {
  GridFunction data;
  int k = 0;
  int s = 0;
  AtomKind kind = AtomKind::haar;
  std::shared_ptr<const HerzSpaceParams> params;
};

/// Haar: sign-split indicator of B_k (s = 0 only). Bump-corrected: an
/// off-centre bump minus its projection onto polynomials of degree <= s over
/// the cells of B_k, rescaled to meet the norm bound with equality.
/// Throws IllConditioned for s > 4 or a degenerate projection, InvalidAtom for
/// a Haar atom with s > 0.
Atom atom_make(AtomKind kind, int k, int s, const Dilation& d, const Grid& grid,
               const HerzSpaceParams& params);

struct AtomicSumReport {
  double herz_of_maximal = 0.0;
  double coefficient_norm = 0.0;
  double ratio = 0.0;
  bool degenerate = false;
  bool pass = false;
};

/// R = ||M_phi(sum lambda_i a_i)|| / ||lambda|| with the grand Herz norm on
/// top and the grand sequence norm below. lambdas[i] multiplies atoms[i].
/// Throws InvalidAtom when an atom fails validation.
AtomicSumReport atomic_sum_check(const std::vector<Atom>& atoms, const std::vector<double>& lambdas,
                                 const Dilation& d, const HerzSpaceParams& params,
                                 const Mollifier& phi);

struct FarFieldReport {
  double constant = 0.0;       ///< max |Ta(x)| rho(x)^2 / ||a||_1 over the far field
  std::size_t points = 0;
  bool exact_zero = false;     ///< every far-field value is exactly 0
  bool pass = false;
};

/// Evaluates |Ta(x)| rho(x)^2 / ||a||_1 on the far field of the atom's ball,
/// taken as rho(x) >= b^{k+w}, where inf_{y in B_k} rho(x - y) >= b^{-w}(1 - 1/b) rho(x)
/// is guaranteed. Throws NonZeroMean.
FarFieldReport size_condition_check(const OperatorSpec& op, const Atom& atom, const Dilation& d);

}  // namespace herzlab
