// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "herzlab/atoms.hpp"
#include "herzlab/dilation.hpp"
#include "herzlab/grandseq.hpp"
#include "herzlab/herz.hpp"
#include "herzlab/io.hpp"
#include "herzlab/operators.hpp"
#include "herzlab/oracles.hpp"
#include "herzlab/synth.hpp"
#include "herzlab/varlebesgue.hpp"

using namespace herzlab;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %2d: %s [%s] (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

HerzSpaceParams constant(double alpha, double q, double p, double theta, double lambda = 0.0) {
  HerzSpaceParams hp;
  hp.alpha = ExponentFunction::constant(alpha);
  hp.q = ExponentFunction::constant(q);
  hp.p = p;
  hp.theta = theta;
  hp.lambda = lambda;
  hp.delta2 = 1.0 - 1.0 / q;
  return hp;
}

std::mt19937_64 rng_for(int id) {
  std::seed_seq seq{7, id};
  return std::mt19937_64(seq);
}

const Dilation kD = Dilation::make(parse_matrix("2"));

}  // namespace

int main() {
  criterion(1, "constant-exponent grand Herz norm vs closed form", [] {
    const auto t0 = Clock::now();
    const auto hp = constant(2.0, 2.0, 1.0, 1.0);
    const double o = oracle::constant_herz(2.0, 2.0, 2.0, 1.0, 1.0);
    const double v1 = grand_herz_norm(ball_indicator(kD, Grid{1, 1.0, 4096}, 0), kD, hp).norm;
    const double v2 = grand_herz_norm(ball_indicator(kD, Grid{1, 1.0, 16384}, 0), kD, hp).norm;
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const double e1 = rel(v1, o), e2 = rel(v2, o);
    return Outcome{e1 <= 0.02 && e2 <= 0.005 && e2 <= e1 && secs < 10.0,
                   fmt("oracle %.10f, N=4096 err %.2e, N=16384 err %.2e", o, e1, e2)};
  });

  criterion(2, "two-piece Luxemburg norm vs algebraic root", [] {
    const auto t0 = Clock::now();
    const double v = luxemburg_norm(box_indicator(Grid{1, 2.0, 4096}, 0.0, 2.0), ExponentFunction::step(1.0, 2.0, 4.0));
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const double o = oracle::luxemburg_two_piece();
    return Outcome{std::fabs(v - o) <= 1e-6 && secs < 1.0, fmt("norm %.12f, oracle %.12f", v, o)};
  });

  criterion(3, "||chi_B||_p ||chi_B||_p' = |B_k| for constant p", [] {
    const Grid g{1, 8.0, 4096};
    double worst = 0.0;
    for (double p : {1.5, 2.0, 4.0}) {
      for (int k = -3; k <= 3; ++k) {
        worst = std::max(worst, std::fabs(ball_norm_product(kD, g, k, ExponentFunction::constant(p)).product_exact - 1.0));
      }
    }
    return Outcome{worst <= 1e-3, fmt("max relative error %.2e over k in [-3,3], p in {1.5,2,4}", worst)};
  });

  criterion(4, "generalised Hoelder inequality with explicit r_p", [] {
    auto rng = rng_for(4);
    const Grid g{1, 2.0, 1024};
    double worst = INFINITY;
    int pairs = 0;
    for (const auto& p : {ExponentFunction::constant(2.5), ExponentFunction::log_family(1.5, 4.0)}) {
      for (int i = 0; i < 1000; ++i, ++pairs) {
        worst = std::min(worst, holder_defect(random_test_function(kD, g, rng), random_test_function(kD, g, rng), p));
      }
    }
    return Outcome{worst >= -1e-6, fmt("%d pairs, min defect %.3e", pairs, worst)};
  });

  criterion(5, "block decomposition round trip", [] {
    auto rng = rng_for(5);
    const Grid g{1, 4.0, 2048};
    HerzSpaceParams hp = constant(0.4, 2.0, 2.0, 1.0);
    hp.alpha = ExponentFunction::log_family(0.6, 0.3);
    hp.q = ExponentFunction::log_family(2.0, 3.0);
    double recon = 0.0, func = 0.0;
    for (int i = 0; i < 50; ++i) {
      const GridFunction f = random_test_function(kD, g, rng);
      const auto dec = block_decompose(f, kD, hp);
      const GridFunction back = block_reconstruct(dec);
      for (std::size_t j = 0; j < f.size(); ++j) recon = std::max(recon, std::fabs(back[j] - f[j]));
      func = std::max(func, rel(seq_functional(dec), grand_herz_norm(f, kD, hp).norm));
    }
    return Outcome{recon <= 1e-12 && func <= 1e-9,
                   fmt("50 functions, max pointwise error %.2e, functional error %.2e", recon, func)};
  });

  criterion(6, "grand sequence norm vs dense brute force", [] {
    auto rng = rng_for(6);
    std::uniform_int_distribution<int> len(1, 20);
    std::uniform_real_distribution<double> lm(std::log(1e-3), std::log(1e3));
    std::bernoulli_distribution neg(0.3);
    const double ps[] = {1.0, 2.0, 3.0}, ths[] = {0.5, 1.0, 2.0};
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      std::vector<double> x(static_cast<std::size_t>(len(rng)));
      for (double& v : x) v = (neg(rng) ? -1.0 : 1.0) * std::exp(lm(rng));
      const double p = ps[i % 3], th = ths[(i / 3) % 3];
      worst = std::max(worst, rel(grand_seq_sup(x, {.p = p, .theta = th}).value, oracle::grand_seq_dense(x, p, th)));
    }
    const double delta = grand_seq_norm({0, {1.0}}, {.p = 1.0, .theta = 1.0});
    const double o = oracle::delta_sequence_p1_theta1();
    return Outcome{worst <= 1e-6 && std::fabs(delta - o) <= 1e-6,
                   fmt("200 sequences, max relative error %.2e; delta sequence %.10f vs %.10f", worst, delta, o)};
  });

  criterion(7, "sum and product inequalities, lambda = 0 reduction", [] {
    auto rng = rng_for(7);
    const Grid g{1, 4.0, 512};
    const auto hs = constant(0.3, 2.0, 2.0, 1.0, 0.1);
    const auto p1 = constant(0.2, 4.0, 4.0, 1.0, 0.05);
    const auto p2 = constant(0.1, 4.0, 4.0, 1.0, 0.02);
    const auto p3 = constant(0.1, 6.0, 6.0, 1.0, 0.0);
    double sum = 0.0, prod = 0.0, red = 0.0;
    for (int i = 0; i < 500; ++i) {
      const GridFunction f = random_test_function(kD, g, rng);
      const GridFunction h = random_test_function(kD, g, rng);
      sum = std::max(sum, sum_check(f, h, kD, hs).ratio);
      if (i % 2 == 0) {
        prod = std::max(prod, product_check(f, h, kD, p1, p2).ratio);
      } else {
        prod = std::max(prod, product_check({f, h, random_test_function(kD, g, rng)}, kD, {p3, p3, p3}).ratio);
      }
      if (i < 50) {
        HerzSpaceParams v = hs;
        v.lambda = 0.0;
        v.q = ExponentFunction::log_family(2.0, 3.0);
        red = std::max(red, rel(herz_morrey_norm(f, kD, v).norm, grand_herz_norm(f, kD, v).norm));
      }
    }
    return Outcome{sum <= 1 + 1e-6 && prod <= 1 + 1e-6 && red <= 1e-12,
                   fmt("max sum ratio %.6f, max product ratio %.6f, reduction error %.1e", sum, prod, red)};
  });

  criterion(8, "operator sweep stable under a 4x larger family", [] {
    const Grid g{1, 8.0, 512};
    SweepOptions so;
    so.base = constant(0.25, 2.0, 2.0, 1.0);
    for (int i = 1; i <= 9; ++i) so.alphas.push_back(0.1 * i * so.base.delta2);
    so.lambdas = {0.0, 0.25};
    so.lambda_relative = true;
    so.small_size = 100;
    const auto fam = scale_family(kD, g, 400, 7);
    const auto hardy = boundedness_sweep(parse_operator("hardy"), kD, fam, so);
    const auto ident = boundedness_sweep(parse_operator("identity"), kD, fam, so);
    double worst = 0.0;
    for (const auto& c : hardy.cells) worst = std::max(worst, c.growth);
    const bool ones = std::all_of(ident.cells.begin(), ident.cells.end(),
                                  [](const SweepCell& c) { return c.sup_small == 1.0 && c.sup_large == 1.0; });
    return Outcome{hardy.pass && worst < 1.5 && ones,
                   fmt("%zu hardy cells, max growth %.4f; identity cells all 1.0: %s", hardy.cells.size(), worst,
                       ones ? "yes" : "no")};
  });

  criterion(9, "atoms: construction, Haar moments, exact Hardy far field", [] {
    HerzSpaceParams hp = constant(0.5, 2.0, 2.0, 1.0);
    const Grid g{1, 2.0, 4096};
    int made = 0, valid = 0, exact = 0;
    auto take = [&](const Atom& a, const Dilation& d) {
      ++made;
      valid += atom_validate(a.data, a.k, d, hp, a.s).pass ? 1 : 0;
      exact += size_condition_check(parse_operator("hardy"), a, d).exact_zero ? 1 : 0;
    };
    for (int k = -2; k <= 2; ++k) {
      take(atom_make(AtomKind::haar, k, 0, kD, g, hp), kD);
      for (int s = 0; s <= 4; ++s) take(atom_make(AtomKind::bump_corrected, k, s, kD, g, hp), kD);
    }
    const Dilation d2 = Dilation::make(parse_matrix("2 1; 0 2"));
    for (int s = 0; s <= 2; ++s) take(atom_make(AtomKind::bump_corrected, 0, s, d2, Grid{2, 4.0, 96}, hp), d2);
    const Atom haar = atom_make(AtomKind::haar, 0, 0, kD, g, hp);
    const bool s0 = atom_validate(haar.data, 0, kD, hp, 0).pass;
    const auto r1 = atom_validate(haar.data, 0, kD, hp, 1);
    const double m1 = r1.moments.at(1).value;
    return Outcome{valid == made && exact == made && s0 && !r1.pass && std::fabs(m1 + 0.25) <= 1e-8,
                   fmt("%d/%d atoms valid, %d/%d exact far-field zeros, Haar s=0 %s, s=1 moment %.12f", valid, made,
                       exact, made, s0 ? "passes" : "fails", m1)};
  });

  criterion(10, "geometry: quasi-triangle, homogeneity, ball measure", [] {
    auto rng = rng_for(10);
    std::uniform_real_distribution<double> lr(std::log(1e-3), std::log(1e3)), ang(0.0, 6.283185307179586);
    bool ok = true;
    std::string detail;
    for (const char* m : {"2", "2 0; 0 2", "2 1; 0 2"}) {
      const Dilation d = Dilation::make(parse_matrix(m));
      auto pt = [&] {
        const double r = std::exp(lr(rng)), t = ang(rng);
        return d.dim() == 1 ? Point{t < 3.14 ? r : -r, 0.0} : Point{r * std::cos(t), r * std::sin(t)};
      };
      std::vector<std::pair<Point, Point>> pairs;
      for (int i = 0; i < 10000; ++i) pairs.push_back({pt(), pt()});
      const auto q = check_quasi_triangle(d, pairs);
      int homog = 0;
      for (const auto& [x, y] : pairs) homog += d.rho(d.apply(x)) == d.b() * d.rho(x) ? 0 : 1;
      std::vector<double> errs;
      for (int n : d.dim() == 1 ? std::vector<int>{256, 1024, 4096} : std::vector<int>{64, 128, 256}) {
        const Grid g{d.dim(), 1.7, n};
        double worst = 0.0;
        for (int k = -1; k <= 1; ++k) {
          std::size_t cnt = 0;
          for (std::size_t i = 0; i < g.size(); ++i) cnt += d.contains(g.center(i), k) ? 1 : 0;
          worst = std::max(worst, std::fabs(cnt * g.cell_volume() / d.ball_volume(k) - 1.0));
        }
        errs.push_back(worst);
      }
      const bool conv = errs[2] <= std::max(errs[0], errs[1]) && errs[2] <= 0.01;
      ok = ok && q.pass && homog == 0 && conv;
      detail += fmt("[%s] ratio %.3f <= %.0f, |B|/b^k err %.1e->%.1e; ", m, q.max_ratio, q.bound, errs[0], errs[2]);
    }
    detail.resize(detail.size() - 2);
    return Outcome{ok, detail};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
