#pragma once

#include <vector>

// Reference computations that share no code with the library: closed forms,
// scalar root solves and dense brute-force maximisation.
namespace herzlab::oracle {

/// Dense log-grid maximisation of (eps^theta sum |x_k|^{p(1+eps)})^{1/(p(1+eps))}
/// over eps in [1e-8, 1e8] with repeated local zooming, compared against max |x_k|.
double grand_seq_dense(const std::vector<double>& x, double p, double theta);

/// Root of ln(eps) = 1 + 1/eps by bisection, giving the delta-sequence value
/// exp(1/eps) at p = theta = 1.
double delta_sequence_p1_theta1();

/// Grand Herz norm of chi_{B_0} for A = [b] (any 1-D dilation with |det| = b)
/// and constant alpha, q: the slice norms are b^{k alpha}(b^k - b^{k-1})^{1/q}
/// for k <= 0, whose p(1+eps)-sums are geometric.
double constant_herz(double b, double alpha, double q, double p, double theta);

/// Same data with the extra supremum over truncation levels L weighted by
/// b^{-L lambda}, brute-forced over L in [-60, 5] and a dense eps grid.
double constant_herz_morrey(double b, double alpha, double q, double p, double theta, double lambda);

/// Luxemburg norm of a piecewise-constant function: sum_i m_i (a_i/lam)^{p_i} = 1.
double luxemburg_pieces(const std::vector<double>& measures, const std::vector<double>& values,
                        const std::vector<double>& exponents);

/// chi_[0,1] + chi_[1,2] with exponents 2 and 4: lam = t^{-1/2}, t = (sqrt5 - 1)/2.
double luxemburg_two_piece();

/// j with |x| in [|a|^j / 2, |a|^{j+1} / 2), i.e. x in B_{j+1} \ B_j for A = [a].
int annulus_index_1d(double a, double x);

}  // namespace herzlab::oracle
