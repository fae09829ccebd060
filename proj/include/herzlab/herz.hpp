#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "herzlab/dilation.hpp"
#include "herzlab/exponent.hpp"
#include "herzlab/grandseq.hpp"
#include "herzlab/grid.hpp"

namespace herzlab {

struct HerzSpaceParams {
  ExponentFunction alpha = ExponentFunction::constant(1.0);
  double p = 2.0;
  ExponentFunction q = ExponentFunction::constant(2.0);
  double theta = 1.0;
  double lambda = 0.0;
  bool homogeneous = true;
  double delta2 = 0.5;

  GrandSequenceParams sequence() const { return {.p = p, .theta = theta}; }
  /// Throws BadParams when p < 1, theta <= 0, lambda < 0 or delta2 outside (0, 1).
  void validate() const;
};

/// Assignment of grid cells to annuli C_k = B_k \ B_{k-1}.
///
/// Cell i sits in slice k = annulus_index(centre) + 1. The non-homogeneous
/// variant merges every k <= 0 into slice 0 (the whole of B_0). A cell whose
/// centre is the origin belongs to every B_k and is put in the lowest slice.
struct AnnulusPartition {
  Grid grid;
  bool homogeneous = true;
  int k_min = 0;
  int k_max = 0;
  std::vector<int> slice_of;                     ///< per cell
  std::vector<std::vector<std::size_t>> cells;   ///< per k - k_min

  static AnnulusPartition build(const Dilation& d, const Grid& grid, bool homogeneous);
  const std::vector<std::size_t>& at(int k) const { return cells[static_cast<std::size_t>(k - k_min)]; }
  int count() const { return k_max - k_min + 1; }
};

/// f chi_{C_k}. Throws OutOfCoverage when k lies outside the occupied range.
GridFunction annulus_slice(const GridFunction& f, const Dilation& d, int k, bool homogeneous = true);

struct GrandHerzResult {
  double norm = 0.0;
  /// Bound on what the slices below k_min could add (0 for the non-homogeneous norm).
  double tail_bound = 0.0;
  Sequence per_k_terms;  ///< t_k with offset k_min
  double argmax_eps = 0.0;
};

struct HerzMorreyResult {
  double norm = 0.0;
  double argmax_eps = 0.0;
  int argmax_L = 0;
  double tail_bound = 0.0;
  Sequence per_k_terms;
};

enum class WeightMode { pointwise, split };

/// Evaluator bound to one geometry, grid and parameter set; it caches the
/// annulus partition and the exponent samples so repeated norms are cheap.
class HerzEvaluator {
 public:
  HerzEvaluator(const Dilation& d, const Grid& grid, HerzSpaceParams params);

  const AnnulusPartition& partition() const noexcept { return partition_; }
  const HerzSpaceParams& params() const noexcept { return params_; }
  const Dilation& dilation() const noexcept { return d_; }

  /// t_k = ||b^{k alpha(.)} f chi_k||_{q(.)} over the partition range; split
  /// mode freezes the weight at alpha(0) for k < 0 and alpha_inf for k >= 0.
  Sequence terms(const GridFunction& f, WeightMode mode = WeightMode::pointwise) const;

  GrandHerzResult grand_herz(const GridFunction& f, WeightMode mode = WeightMode::pointwise) const;
  HerzMorreyResult herz_morrey(const GridFunction& f) const;

  /// Bound on the grand norm of the unresolved slices k < k_min, from
  /// t_k <= F b^{k gamma} with gamma = alpha^- + 1/q^+ (|C_k| < 1 there).
  /// Throws TailUnbounded when gamma <= 0 and f does not vanish near 0.
  double tail_bound(const GridFunction& f) const;

 private:
  Dilation d_;
  Grid grid_;
  HerzSpaceParams params_;
  AnnulusPartition partition_;
  std::vector<double> alpha_;
  std::vector<double> q_;
};

GrandHerzResult grand_herz_norm(const GridFunction& f, const Dilation& d, const HerzSpaceParams& params);
double split_norm(const GridFunction& f, const Dilation& d, const HerzSpaceParams& params);
HerzMorreyResult herz_morrey_norm(const GridFunction& f, const Dilation& d, const HerzSpaceParams& params);

struct BlockDecomposition {
  Grid grid;
  std::vector<int> ks;
  std::vector<double> coefficients;
  std::vector<GridFunction> blocks;
  std::shared_ptr<const HerzSpaceParams> params;

  Sequence coefficient_sequence() const;
};

struct BlockReport {
  int k = 0;
  bool support_ok = false;
  double norm = 0.0;
  double bound = 0.0;
  bool norm_ok = false;
  bool restricted = false;  ///< k >= 0
  bool pass = false;
};

/// lambda_k = t_k and b_k = f chi_k / lambda_k for every nonzero slice.
/// Throws ZeroFunction, and BlockBoundViolated when alpha is not monotone
/// enough for b_k to meet its norm bound (alpha(x) <= alpha(0) on k < 0 slices
/// and alpha(x) >= alpha_inf on k >= 0 slices).
BlockDecomposition block_decompose(const GridFunction& f, const Dilation& d, const HerzSpaceParams& params);
GridFunction block_reconstruct(const BlockDecomposition& dec);
BlockReport block_validate(const GridFunction& b, int k, const Dilation& d, const HerzSpaceParams& params);
/// Grand sequence norm of the coefficients.
double seq_functional(const BlockDecomposition& dec);

struct AlgebraReport {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double bound = 1.0;
  bool degenerate = false;
  bool pass = false;
};

/// Parameters of a product space: alpha = sum, 1/q = sum 1/q_i, 1/p = sum 1/p_i,
/// lambda = sum. Throws ParamMismatch when theta or homogeneity differ or p < 1.
HerzSpaceParams product_params(const std::vector<HerzSpaceParams>& factors);

/// ||prod f_i|| / prod ||f_i|| in the Herz-Morrey norms. The bound is the
/// product of the pointwise Hoelder constants sum_i (q/q_i)^+, which is 1 for
/// constant exponents.
AlgebraReport product_check(const std::vector<GridFunction>& fs, const Dilation& d,
                            const std::vector<HerzSpaceParams>& params);
AlgebraReport product_check(const GridFunction& f, const GridFunction& g, const Dilation& d,
                            const HerzSpaceParams& params1, const HerzSpaceParams& params2);

/// ||sum f_i|| / sum ||f_i||.
AlgebraReport sum_check(const std::vector<GridFunction>& fs, const Dilation& d,
                        const HerzSpaceParams& params);
AlgebraReport sum_check(const GridFunction& f, const GridFunction& g, const Dilation& d,
                        const HerzSpaceParams& params);

}  // namespace herzlab
