#include "herzlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

#include "herzlab/atoms.hpp"
#include "herzlab/error.hpp"
#include "herzlab/grandseq.hpp"
#include "herzlab/herz.hpp"
#include "herzlab/operators.hpp"
#include "herzlab/oracles.hpp"
#include "herzlab/synth.hpp"
#include "herzlab/varlebesgue.hpp"

namespace herzlab {

namespace {

using Rng = std::mt19937_64;

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Recorder {
 public:
  Recorder(std::string suite, const SuiteConfig& cfg) : suite_(std::move(suite)), cfg_(cfg) {}

  // fn fills inputs, measured, bound and pass. A thrown Error becomes a failed row.
  template <class Fn>
  void run(const std::string& check, const std::string& anchor, CheckKind kind, Fn&& fn) {
    VerificationReport r;
    r.suite = suite_;
    r.check = check;
    r.anchor = anchor;
    r.kind = kind;
    r.inputs["seed"] = cfg_.seed;
    std::seed_seq ss{cfg_.seed, name_hash(suite_ + "/" + check)};
    Rng rng(ss);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(r, rng);
    } catch (const std::exception& e) {
      r.pass = false;
      r.measured["error"] = e.what();
    }
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (kind == CheckKind::record && !r.measured.contains("error")) r.pass = true;
    out_.push_back(std::move(r));
  }

  std::vector<VerificationReport> take() { return std::move(out_); }
  const SuiteConfig& config() const { return cfg_; }

 private:
  std::string suite_;
  const SuiteConfig& cfg_;
  std::vector<VerificationReport> out_;
};

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

const std::vector<std::string> kMatrices = {"2", "2 0; 0 2", "2 1; 0 2"};

Point random_point(Rng& rng, int dim) {
  std::uniform_real_distribution<double> lr(std::log(1e-3), std::log(1e3));
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution sign(0.5);
  const double r = std::exp(lr(rng));
  if (dim == 1) return {sign(rng) ? r : -r, 0.0};
  const double t = ang(rng);
  return {r * std::cos(t), r * std::sin(t)};
}

// ---------------------------------------------------------------- geometry

std::vector<VerificationReport> geometry_suite(const SuiteConfig& cfg) {
  Recorder rec("geometry", cfg);
  for (const auto& m : kMatrices) {
    const Dilation d = Dilation::make(parse_matrix(m));
    const std::string tag = "[" + m + "]";
    rec.run("volume_one" + tag, "the unit ellipsoid has volume one", CheckKind::identity,
            [&](VerificationReport& r, Rng&) {
              r.inputs["matrix"] = m;
              r.measured["volume"] = d.ellipsoid_volume();
              r.bound = 1e-9;
              r.pass = std::fabs(d.ellipsoid_volume() - 1.0) <= 1e-9;
            });
    rec.run("growth" + tag, "|Ax|_M >= c |x|_M, so the balls are strictly nested", CheckKind::bound,
            [&](VerificationReport& r, Rng&) {
              r.inputs["matrix"] = m;
              r.measured["growth_lower_bound"] = d.growth_lower_bound();
              r.bound = d.c_growth();
              r.pass = d.growth_lower_bound() >= d.c_growth() * (1.0 - 1e-12);
            });
    rec.run("quasi_triangle" + tag, "rho(x+y) <= b^w (rho(x) + rho(y))", CheckKind::bound,
            [&](VerificationReport& r, Rng& rng) {
              std::vector<std::pair<Point, Point>> pairs;
              for (int i = 0; i < 10000; ++i) pairs.push_back({random_point(rng, d.dim()), random_point(rng, d.dim())});
              const Point x = random_point(rng, d.dim());
              pairs.push_back({x, x});
              pairs.push_back({x, {-x[0], -x[1]}});
              const auto q = check_quasi_triangle(d, pairs);
              r.inputs["matrix"] = m;
              r.inputs["pairs"] = pairs.size();
              r.measured["max_ratio"] = q.max_ratio;
              r.measured["w"] = d.w();
              r.bound = q.bound;
              r.pass = q.pass;
            });
    rec.run("rho_homogeneity" + tag, "rho(Ax) = b rho(x)", CheckKind::identity,
            [&](VerificationReport& r, Rng& rng) {
              int bad = 0;
              for (int i = 0; i < 1000; ++i) {
                const Point x = random_point(rng, d.dim());
                if (d.rho(d.apply(x)) != d.b() * d.rho(x)) ++bad;
              }
              r.inputs["matrix"] = m;
              r.measured["mismatches"] = bad;
              r.pass = bad == 0;
            });
    rec.run("nesting" + tag, "B_k is contained in B_{k+1}", CheckKind::identity,
            [&](VerificationReport& r, Rng&) {
              const Grid g{d.dim(), 2.0, d.dim() == 1 ? 1024 : 64};
              int bad = 0;
              for (std::size_t i = 0; i < g.size(); ++i) {
                for (int k = -4; k <= 3; ++k) {
                  if (d.contains(g.center(i), k) && !d.contains(g.center(i), k + 1)) ++bad;
                }
              }
              r.inputs["matrix"] = m;
              r.measured["violations"] = bad;
              r.pass = bad == 0;
            });
    rec.run("ball_measure" + tag, "|B_k| = b^k, measured on refining grids", CheckKind::bound,
            [&](VerificationReport& r, Rng&) {
              const std::vector<int> ns = d.dim() == 1 ? std::vector<int>{256, 1024, 4096}
                                                       : std::vector<int>{64, 128, 256};
              Json errs = Json::array();
              std::vector<double> e;
              for (int n : ns) {
                // An unaligned box so no resolution is accidentally exact.
                const Grid g{d.dim(), 1.7, n};
                double worst = 0.0;
                for (int k = -1; k <= 1; ++k) {
                  std::size_t cnt = 0;
                  for (std::size_t i = 0; i < g.size(); ++i) cnt += d.contains(g.center(i), k) ? 1 : 0;
                  worst = std::max(worst, std::fabs(cnt * g.cell_volume() / d.ball_volume(k) - 1.0));
                }
                e.push_back(worst);
                errs.push_back(worst);
              }
              r.inputs["matrix"] = m;
              r.inputs["resolutions"] = ns;
              r.measured["relative_errors"] = errs;
              r.bound = 0.01;
              r.pass = e.back() <= *std::max_element(e.begin(), e.end() - 1) && e.back() <= 0.01;
            });
  }
  return rec.take();
}

// ---------------------------------------------------------------- lebesgue

std::vector<VerificationReport> lebesgue_suite(const SuiteConfig& cfg) {
  Recorder rec("lebesgue", cfg);
  const Dilation d1 = Dilation::make(parse_matrix("2"));
  const Grid g2{1, 2.0, 4096};
  const ExponentFunction logp = ExponentFunction::log_family(2.0, 3.0);

  rec.run("luxemburg_two_piece", "Luxemburg norm of a two-piece exponent example", CheckKind::oracle,
          [&](VerificationReport& r, Rng&) {
            const GridFunction f = box_indicator(g2, 0.0, 2.0);
            const double v = luxemburg_norm(f, ExponentFunction::step(1.0, 2.0, 4.0));
            const double o = oracle::luxemburg_two_piece();
            r.measured["norm"] = v;
            r.measured["oracle"] = o;
            r.bound = 1e-6;
            r.pass = std::fabs(v - o) <= 1e-6;
          });
  rec.run("unit_modular", "modular(f, ||f||) = 1", CheckKind::identity, [&](VerificationReport& r, Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const GridFunction f = random_test_function(d1, g2, rng);
      worst = std::max(worst, std::fabs(modular(f, luxemburg_norm(f, logp), logp) - 1.0));
    }
    r.measured["max_deviation"] = worst;
    r.bound = 1e-8;
    r.pass = worst <= 1e-8;
  });
  rec.run("homogeneity", "||c f|| = |c| ||f||", CheckKind::identity, [&](VerificationReport& r, Rng& rng) {
    std::uniform_real_distribution<double> c(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const GridFunction f = random_test_function(d1, g2, rng);
      const double s = c(rng);
      worst = std::max(worst, rel_err(luxemburg_norm(f.scaled(s), logp), std::fabs(s) * luxemburg_norm(f, logp)));
    }
    r.measured["max_relative_error"] = worst;
    r.bound = 1e-9;
    r.pass = worst <= 1e-9;
  });
  rec.run("monotonicity", "|f| <= |g| implies ||f|| <= ||g||", CheckKind::bound, [&](VerificationReport& r, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = -1.0;
    for (int i = 0; i < 50; ++i) {
      const GridFunction g = random_test_function(d1, g2, rng);
      std::vector<double> v(g.size());
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = g[j] * u(rng);
      const GridFunction f(g2, v);
      worst = std::max(worst, luxemburg_norm(f, logp) - luxemburg_norm(g, logp));
    }
    r.measured["max_excess"] = worst;
    r.bound = 1e-12;
    r.pass = worst <= 1e-12;
  });
  for (const auto& [name, p] : std::vector<std::pair<std::string, ExponentFunction>>{
           {"const", ExponentFunction::constant(2.5)}, {"log", logp}}) {
    const ExponentFunction pe = p;
    rec.run("holder_defect[" + name + "]", "generalised Hoelder inequality with r_p = 1 + 1/p^- - 1/p^+",
            CheckKind::bound, [&](VerificationReport& r, Rng& rng) {
              double worst = INFINITY;
              for (int i = 0; i < 300; ++i) {
                worst = std::min(worst, holder_defect(random_test_function(d1, g2, rng),
                                                      random_test_function(d1, g2, rng), pe));
              }
              r.inputs["p"] = pe.describe();
              r.inputs["pairs"] = 300;
              r.measured["min_defect"] = worst;
              r.bound = -1e-6;
              r.pass = worst >= -1e-6;
            });
  }
  rec.run("ball_norm_product[const]", "||chi_B||_p ||chi_B||_p' = |B| for constant p", CheckKind::identity,
          [&](VerificationReport& r, Rng&) {
            const Grid g{1, 8.0, 4096};
            double worst = 0.0;
            for (double p : {1.5, 2.0, 4.0}) {
              for (int k = -3; k <= 3; ++k) {
                worst = std::max(worst, std::fabs(ball_norm_product(d1, g, k, ExponentFunction::constant(p)).product_exact - 1.0));
              }
            }
            r.measured["max_relative_error"] = worst;
            r.bound = 1e-3;
            r.pass = worst <= 1e-3;
          });
  rec.run("ball_norm_product[log]", "ball norm products stay bounded for a log-Hoelder p", CheckKind::bound,
          [&](VerificationReport& r, Rng&) {
            Json per = Json::array();
            std::vector<double> maxima;
            for (int n : {1024, 2048, 4096}) {
              const Grid g{1, 8.0, n};
              double mx = 0.0;
              for (int k = -3; k <= 3; ++k) mx = std::max(mx, ball_norm_product(d1, g, k, logp).product_exact);
              maxima.push_back(mx);
              per.push_back(mx);
            }
            const double spread = (*std::max_element(maxima.begin(), maxima.end()) -
                                   *std::min_element(maxima.begin(), maxima.end())) / maxima.back();
            r.measured["max_product_per_resolution"] = per;
            r.measured["relative_spread"] = spread;
            r.bound = 2.0;
            r.pass = maxima.back() <= 2.0 && spread <= 0.05;
          });
  for (const auto& [name, q, expected] : std::vector<std::tuple<std::string, ExponentFunction, double>>{
           {"q=2", ExponentFunction::constant(2.0), 0.5},
           {"q=4", ExponentFunction::constant(4.0), 0.75},
           {"log(2,2)", ExponentFunction::log_family(2.0, 2.0), 0.5}}) {
    const ExponentFunction qe = q;
    const double want = expected;
    rec.run("subset_ratio_fit[" + name + "]", "ball ratio exponent delta2 = 1 - 1/q for constant q",
            CheckKind::identity, [&, qe, want](VerificationReport& r, Rng&) {
              const auto fit = subset_ratio_fit(d1, Grid{1, 8.0, 4096}, qe, -3, 3);
              r.measured["delta1"] = fit.delta1;
              r.measured["delta2"] = fit.delta2;
              r.measured["expected_delta2"] = want;
              r.bound = 1e-3;
              r.pass = std::fabs(fit.delta2 - want) <= 1e-3;
            });
  }
  rec.run("product_norm[q=3,r=6]", "||fg||_p <= ||f||_q ||g||_r with 1/p = 1/q + 1/r", CheckKind::bound,
          [&](VerificationReport& r, Rng& rng) {
            double worst = 0.0;
            for (int i = 0; i < 200; ++i) {
              const auto rep = product_norm_check(random_test_function(d1, g2, rng), random_test_function(d1, g2, rng),
                                                  ExponentFunction::constant(3.0), ExponentFunction::constant(6.0));
              worst = std::max(worst, rep.ratio);
            }
            r.measured["max_ratio"] = worst;
            r.bound = 1.0 + 1e-6;
            r.pass = worst <= 1.0 + 1e-6;
          });
  rec.run("product_norm[q=r=2]", "a derived p = 1 leaves the exponent class", CheckKind::identity,
          [&](VerificationReport& r, Rng&) {
            const GridFunction f = box_indicator(g2, 0.0, 1.0);
            try {
              product_norm_check(f, f, ExponentFunction::constant(2.0), ExponentFunction::constant(2.0));
              r.pass = false;
            } catch (const Error& e) {
              r.measured["error_code"] = std::string(to_string(e.code()));
              r.pass = e.code() == ErrorCode::ReciprocalMismatch;
            }
          });
  std::vector<Point> samples;
  for (int i = -400; i <= 400; ++i) samples.push_back({i / 100.0, 0.0});
  for (double e = -6; e <= 6; e += 0.25) samples.push_back({std::pow(10.0, e), 0.0});
  for (const auto& [name, g, should_pass] : std::vector<std::tuple<std::string, ExponentFunction, bool>>{
           {"const", ExponentFunction::constant(2.0), true},
           {"log(2,3)", logp, true},
           {"step(1,2,4)", ExponentFunction::step(1.0, 2.0, 4.0), false}}) {
    const ExponentFunction ge = g;
    const bool want = should_pass;
    rec.run("log_holder[" + name + "]", "log decay at the origin and at infinity", CheckKind::identity,
            [&, ge, want](VerificationReport& r, Rng&) {
              const auto rep = log_holder_check(ge, samples);
              r.measured["origin_constant"] = rep.origin_constant;
              r.measured["infinity_constant"] = rep.infinity_constant;
              r.measured["local_constant"] = rep.local_constant;
              r.measured["failure"] = rep.failure;
              if (rep.analytic_constant) r.bound = *rep.analytic_constant;
              r.measured["expected_pass"] = want;
              r.pass = rep.pass == want && (want || rep.failure == "NotLogHolder");
            });
  }
  return rec.take();
}

// ---------------------------------------------------------------- grandseq

std::vector<double> random_sequence(Rng& rng) {
  std::uniform_int_distribution<int> len(1, 20);
  std::uniform_real_distribution<double> lm(std::log(1e-3), std::log(1e3));
  std::bernoulli_distribution neg(0.3), zero(0.1);
  std::vector<double> x(static_cast<std::size_t>(len(rng)));
  for (double& v : x) v = zero(rng) ? 0.0 : (neg(rng) ? -1.0 : 1.0) * std::exp(lm(rng));
  return x;
}

std::vector<VerificationReport> grandseq_suite(const SuiteConfig& cfg) {
  Recorder rec("grandseq", cfg);
  rec.run("delta_sequence", "sup_eps eps^{1/(1+eps)} for the unit sequence", CheckKind::oracle,
          [&](VerificationReport& r, Rng&) {
            const Sequence e0{0, {1.0}};
            const double v1 = grand_seq_norm(e0, {.p = 1.0, .theta = 1.0});
            const double v2 = grand_seq_norm(e0, {.p = 1.0, .theta = 2.0});
            const double o = oracle::delta_sequence_p1_theta1();
            r.measured["theta1"] = v1;
            r.measured["theta2"] = v2;
            r.measured["oracle"] = o;
            r.bound = 1e-6;
            r.pass = std::fabs(v1 - o) <= 1e-6 && std::fabs(v2 - o * o) <= 1e-6;
          });
  rec.run("dense_agreement", "scan-and-refine supremum against a dense brute force", CheckKind::oracle,
          [&](VerificationReport& r, Rng& rng) {
            double worst = 0.0;
            int count = 0;
            for (double p : {1.0, 2.0, 3.0}) {
              for (double th : {0.5, 1.0, 2.0}) {
                for (int i = 0; i < 23; ++i, ++count) {
                  const auto x = random_sequence(rng);
                  const double a = grand_seq_sup(x, {.p = p, .theta = th}).value;
                  worst = std::max(worst, rel_err(a, oracle::grand_seq_dense(x, p, th)));
                }
              }
            }
            r.inputs["sequences"] = count;
            r.measured["max_relative_error"] = worst;
            r.bound = 1e-6;
            r.pass = worst <= 1e-6;
          });
  rec.run("homogeneity", "grand norm of c x is |c| times the norm", CheckKind::identity,
          [&](VerificationReport& r, Rng& rng) {
            std::uniform_real_distribution<double> c(-100.0, 100.0);
            double worst = 0.0;
            for (int i = 0; i < 100; ++i) {
              Sequence x{0, random_sequence(rng)};
              const double s = c(rng);
              Sequence y = x;
              for (double& v : y.values) v *= s;
              const GrandSequenceParams gp{.p = 2.0, .theta = 1.0};
              worst = std::max(worst, rel_err(grand_seq_norm(y, gp), std::fabs(s) * grand_seq_norm(x, gp)));
            }
            r.measured["max_relative_error"] = worst;
            r.bound = 1e-9;
            r.pass = worst <= 1e-9;
          });
  rec.run("support_monotone", "zeroing an entry never increases the norm", CheckKind::bound,
          [&](VerificationReport& r, Rng& rng) {
            double worst = -INFINITY;
            for (int i = 0; i < 100; ++i) {
              Sequence x{0, random_sequence(rng)};
              Sequence y = x;
              y.values[static_cast<std::size_t>(i) % y.values.size()] = 0.0;
              const GrandSequenceParams gp{.p = 1.5, .theta = 1.0};
              worst = std::max(worst, grand_seq_norm(y, gp) - grand_seq_norm(x, gp));
            }
            r.measured["max_increase"] = worst;
            r.bound = 1e-12;
            r.pass = worst <= 1e-12;
          });
  rec.run("nesting_chain", "l^{p(1-eps)} -> l^p -> grand(theta1) -> grand(theta2) -> l^{p(1+delta)}",
          CheckKind::bound, [&](VerificationReport& r, Rng& rng) {
            std::array<double, 4> worst{};
            bool ok = true;
            for (int i = 0; i < 50; ++i) {
              const auto rep = nesting_report({0, random_sequence(rng)}, 2.0, 1.0, 2.0, 0.25, 0.5);
              ok = ok && rep.pass;
              for (int l = 0; l < 4; ++l) worst[l] = std::max(worst[l], rep.ratios[l]);
            }
            r.inputs["p"] = 2.0;
            r.inputs["theta"] = {1.0, 2.0};
            r.measured["max_ratios"] = worst;
            r.pass = ok;
          });
  return rec.take();
}

// ---------------------------------------------------------------- herz

HerzSpaceParams constant_params(double alpha, double q, double p, double theta, double lambda = 0.0) {
  HerzSpaceParams hp;
  hp.alpha = ExponentFunction::constant(alpha);
  hp.q = ExponentFunction::constant(q);
  hp.p = p;
  hp.theta = theta;
  hp.lambda = lambda;
  hp.delta2 = 1.0 - 1.0 / q;
  return hp;
}

std::vector<VerificationReport> herz_suite(const SuiteConfig& cfg) {
  Recorder rec("herz", cfg);
  const Dilation d1 = Dilation::make(parse_matrix("2"));
  const Grid g1{1, 1.0, 4096};
  const GridFunction ball = ball_indicator(d1, g1, 0);

  rec.run("constant_oracle", "grand Herz norm of chi_B0 against the geometric closed form", CheckKind::oracle,
          [&](VerificationReport& r, Rng&) {
            const double v = grand_herz_norm(ball, d1, constant_params(2.0, 2.0, 1.0, 1.0)).norm;
            const double o = oracle::constant_herz(2.0, 2.0, 2.0, 1.0, 1.0);
            r.measured["norm"] = v;
            r.measured["oracle"] = o;
            r.bound = 0.02;
            r.pass = rel_err(v, o) <= 0.02;
          });
  rec.run("morrey_oracle", "Herz-Morrey norm of chi_B0 against a brute-force double supremum",
          CheckKind::oracle, [&](VerificationReport& r, Rng&) {
            const double v = herz_morrey_norm(ball, d1, constant_params(2.0, 2.0, 1.0, 1.0, 0.5)).norm;
            const double o = oracle::constant_herz_morrey(2.0, 2.0, 2.0, 1.0, 1.0, 0.5);
            r.measured["norm"] = v;
            r.measured["oracle"] = o;
            r.bound = 1e-6;
            r.pass = rel_err(v, o) <= 1e-6;
          });
  HerzSpaceParams var = constant_params(0.4, 2.0, 2.0, 1.0);
  var.alpha = ExponentFunction::log_family(0.6, 0.3);
  var.q = ExponentFunction::log_family(2.0, 3.0);
  rec.run("lambda_zero", "lambda = 0 reduces the Herz-Morrey norm to the grand Herz norm", CheckKind::identity,
          [&](VerificationReport& r, Rng& rng) {
            double worst = 0.0;
            for (int i = 0; i < 20; ++i) {
              const GridFunction f = random_test_function(d1, g1, rng);
              worst = std::max(worst, rel_err(herz_morrey_norm(f, d1, var).norm, grand_herz_norm(f, d1, var).norm));
            }
            r.measured["max_relative_error"] = worst;
            r.bound = 1e-12;
            r.pass = worst <= 1e-12;
          });
  rec.run("decomposition_round_trip", "f = sum lambda_k b_k with the canonical blocks", CheckKind::identity,
          [&](VerificationReport& r, Rng& rng) {
            double recon = 0.0, func = 0.0;
            bool blocks_ok = true;
            for (int i = 0; i < 20; ++i) {
              const GridFunction f = random_test_function(d1, g1, rng);
              const auto dec = block_decompose(f, d1, var);
              const GridFunction back = block_reconstruct(dec);
              for (std::size_t j = 0; j < f.size(); ++j) recon = std::max(recon, std::fabs(back[j] - f[j]));
              func = std::max(func, rel_err(seq_functional(dec), grand_herz_norm(f, d1, var).norm));
              for (std::size_t j = 0; j < dec.blocks.size(); ++j) {
                blocks_ok = blocks_ok && block_validate(dec.blocks[j], dec.ks[j], d1, var).pass;
              }
            }
            r.measured["max_reconstruction_error"] = recon;
            r.measured["max_functional_error"] = func;
            r.measured["blocks_valid"] = blocks_ok;
            r.bound = 1e-12;
            r.pass = recon <= 1e-12 && func <= 1e-9 && blocks_ok;
          });
  rec.run("split_constant", "split and pointwise weights agree for constant alpha", CheckKind::identity,
          [&](VerificationReport& r, Rng& rng) {
            double worst = 0.0;
            const auto hp = constant_params(0.3, 2.0, 2.0, 1.0);
            for (int i = 0; i < 10; ++i) {
              const GridFunction f = random_test_function(d1, g1, rng);
              worst = std::max(worst, rel_err(split_norm(f, d1, hp), grand_herz_norm(f, d1, hp).norm));
            }
            r.measured["max_relative_error"] = worst;
            r.bound = 1e-9;
            r.pass = worst <= 1e-9;
          });
  rec.run("split_log_band", "split-form equivalence for a log-Hoelder alpha", CheckKind::bound,
          [&](VerificationReport& r, Rng&) {
            Json ratios = Json::array();
            bool ok = true;
            for (int n : {1024, 2048, 4096}) {
              const Grid g{1, 1.0, n};
              const GridFunction f = ball_indicator(d1, g, 0);
              const double ratio = split_norm(f, d1, var) / grand_herz_norm(f, d1, var).norm;
              ratios.push_back(ratio);
              ok = ok && ratio >= 0.5 && ratio <= 2.0;
            }
            r.measured["ratios"] = ratios;
            r.bound = 2.0;
            r.pass = ok;
          });
  rec.run("resolution_invariance", "the norm is stable under grid refinement", CheckKind::bound,
          [&](VerificationReport& r, Rng&) {
            const Dilation d2 = Dilation::make(parse_matrix("2 1; 0 2"));
            const auto hp = constant_params(0.3, 2.0, 2.0, 1.0);
            const double a = grand_herz_norm(ball_indicator(d2, Grid{2, 2.0, 96}, 0), d2, hp).norm;
            const double b = grand_herz_norm(ball_indicator(d2, Grid{2, 2.0, 192}, 0), d2, hp).norm;
            r.measured["coarse"] = a;
            r.measured["fine"] = b;
            r.bound = 0.02;
            r.pass = rel_err(a, b) <= 0.02;
          });
  rec.run("morrey_lambda_monotone", "the Herz-Morrey norm does not grow with lambda (rho >= 1 data)",
          CheckKind::bound, [&](VerificationReport& r, Rng& rng) {
            const Grid g{1, 8.0, 2048};
            bool ok = true;
            for (int i = 0; i < 10; ++i) {
              GridFunction f = random_test_function(d1, g, rng);
              std::vector<double> v(f.values().begin(), f.values().end());
              for (std::size_t j = 0; j < v.size(); ++j) {
                if (d1.contains(g.center(j), 1)) v[j] = 0.0;
              }
              f = GridFunction(g, v);
              if (f.is_zero()) continue;
              double prev = INFINITY;
              for (double lam : {0.0, 0.05, 0.1, 0.2, 0.4}) {
                HerzSpaceParams hp = var;
                hp.lambda = lam;
                const double n = herz_morrey_norm(f, d1, hp).norm;
                ok = ok && n <= prev * (1.0 + 1e-12);
                prev = n;
              }
            }
            r.pass = ok;
          });
  rec.run("nonhomogeneous_slices", "both variants share the slices k >= 1", CheckKind::identity,
          [&](VerificationReport& r, Rng& rng) {
            const Grid g{1, 8.0, 2048};
            bool ok = true;
            for (int i = 0; i < 5; ++i) {
              const GridFunction f = random_test_function(d1, g, rng);
              HerzSpaceParams nh = var;
              nh.homogeneous = false;
              const auto a = HerzEvaluator(d1, g, var).terms(f);
              const auto b = HerzEvaluator(d1, g, nh).terms(f);
              for (int k = 1; k <= a.offset + static_cast<int>(a.values.size()) - 1; ++k) {
                ok = ok && a.values[static_cast<std::size_t>(k - a.offset)] == b.values[static_cast<std::size_t>(k - b.offset)];
              }
            }
            r.pass = ok;
          });
  return rec.take();
}

// ---------------------------------------------------------------- algebra

std::vector<VerificationReport> algebra_suite(const SuiteConfig& cfg) {
  Recorder rec("algebra", cfg);
  const Dilation d1 = Dilation::make(parse_matrix("2"));
  const Grid g{1, 4.0, 1024};
  rec.run("sum_ratio", "||f + g|| <= ||f|| + ||g|| in the Herz-Morrey norm", CheckKind::bound,
          [&](VerificationReport& r, Rng& rng) {
            HerzSpaceParams hp = constant_params(0.3, 2.0, 2.0, 1.0, 0.1);
            hp.q = ExponentFunction::log_family(2.0, 3.0);
            double worst = 0.0;
            for (int i = 0; i < 100; ++i) {
              const auto rep = sum_check(random_test_function(d1, g, rng), random_test_function(d1, g, rng), d1, hp);
              worst = std::max(worst, rep.ratio);
            }
            r.measured["max_ratio"] = worst;
            r.bound = 1.0 + 1e-6;
            r.pass = worst <= 1.0 + 1e-6;
          });
  rec.run("product_ratio", "||fg|| <= ||f|| ||g|| with added indices", CheckKind::bound,
          [&](VerificationReport& r, Rng& rng) {
            const auto p1 = constant_params(0.2, 4.0, 4.0, 1.0, 0.05);
            const auto p2 = constant_params(0.1, 4.0, 4.0, 1.0, 0.02);
            double worst = 0.0;
            for (int i = 0; i < 100; ++i) {
              const auto rep = product_check(random_test_function(d1, g, rng), random_test_function(d1, g, rng), d1, p1, p2);
              worst = std::max(worst, rep.ratio);
            }
            r.measured["max_ratio"] = worst;
            r.bound = 1.0 + 1e-6;
            r.pass = worst <= 1.0 + 1e-6;
          });
  rec.run("product_triple", "three-factor product inequality", CheckKind::bound, [&](VerificationReport& r, Rng& rng) {
    const auto p = constant_params(0.1, 6.0, 6.0, 1.0, 0.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto rep = product_check({random_test_function(d1, g, rng), random_test_function(d1, g, rng),
                                      random_test_function(d1, g, rng)},
                                     d1, {p, p, p});
      worst = std::max(worst, rep.ratio);
    }
    r.measured["max_ratio"] = worst;
    r.bound = 1.0 + 1e-6;
    r.pass = worst <= 1.0 + 1e-6;
  });
  rec.run("product_zero", "a zero factor is a degenerate pass", CheckKind::identity, [&](VerificationReport& r, Rng&) {
    const auto p = constant_params(0.2, 4.0, 4.0, 1.0);
    const auto rep = product_check(ball_indicator(d1, g, 0), GridFunction::zeros(g), d1, p, p);
    r.measured["degenerate"] = rep.degenerate;
    r.pass = rep.degenerate && rep.pass;
  });
  return rec.take();
}

// ---------------------------------------------------------------- operators

std::vector<VerificationReport> operators_suite(const SuiteConfig& cfg) {
  Recorder rec("operators", cfg);
  const Dilation d1 = Dilation::make(parse_matrix("2"));
  const Grid g{1, 4.0, 1024};
  const auto hp = constant_params(0.25, 2.0, 2.0, 1.0);
  const double cutoff = riesz_min_cutoff(d1, g);
  const std::vector<std::pair<std::string, OperatorSpec>> ops = {
      {"hardy", parse_operator("hardy")},
      {"maximal", parse_operator("maximal")},
      {"riesz", OperatorSpec{OperatorKind::truncated_riesz, cutoff, std::nullopt, BallShape::anisotropic}}};

  rec.run("identity_ratio", "the identity has ratio one", CheckKind::identity, [&](VerificationReport& r, Rng& rng) {
    bool ok = true;
    for (int i = 0; i < 10; ++i) ok = ok && op_ratio(OperatorSpec{}, random_test_function(d1, g, rng), d1, hp) == 1.0;
    r.pass = ok;
  });
  for (const auto& [name, op] : ops) {
    const OperatorSpec o = op;
    rec.run("sublinearity[" + name + "]", "|T(f+g)| <= |Tf| + |Tg|", CheckKind::bound,
            [&, o](VerificationReport& r, Rng& rng) {
              double worst = -INFINITY;
              for (int i = 0; i < 10; ++i) {
                const GridFunction f = random_test_function(d1, g, rng);
                const GridFunction h = random_test_function(d1, g, rng);
                const GridFunction a = apply(o, f + h, d1), b = apply(o, f, d1), c = apply(o, h, d1);
                const double scale = std::max({b.sup_norm(), c.sup_norm(), 1e-300});
                for (std::size_t j = 0; j < a.size(); ++j) {
                  worst = std::max(worst, (std::fabs(a[j]) - std::fabs(b[j]) - std::fabs(c[j])) / scale);
                }
              }
              r.measured["max_relative_excess"] = worst;
              r.bound = 1e-9;
              r.pass = worst <= 1e-9;
            });
  }
  rec.run("hardy_size", "|Hf(x)| <= ||f||_1 / rho(x)", CheckKind::bound, [&](VerificationReport& r, Rng& rng) {
    bool ok = true;
    double c = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto rep = hardy_size_check(random_test_function(d1, g, rng), d1);
      ok = ok && rep.pass;
      c = std::max(c, rep.constant);
    }
    r.measured["max_constant"] = c;
    r.bound = 1.0;
    r.pass = ok;
  });
  rec.run("hardy_ball_profile", "H chi_B0 = 1/rho outside B_0", CheckKind::identity, [&](VerificationReport& r, Rng&) {
    const GridFunction h = hardy_apply(ball_indicator(d1, g, 0), d1);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double rho = d1.rho(g.center(i));
      if (rho >= 1.0) worst = std::max(worst, std::fabs(h[i] * rho - 1.0));
    }
    r.measured["max_relative_error"] = worst;
    r.bound = 1e-12;
    r.pass = worst <= 1e-12;
  });
  rec.run("riesz_kernel", "truncated kernel is dominated by 1/rho(x - y)", CheckKind::bound,
          [&](VerificationReport& r, Rng& rng) {
            const GridFunction f = ball_indicator(d1, g, -1);
            const auto rep = riesz_kernel_check(f, d1, cutoff, 100, rng());
            r.measured["constant"] = rep.constant;
            r.measured["points"] = rep.points;
            r.pass = rep.pass;
          });
  rec.run("maximal_dominates", "Mf >= |f|", CheckKind::bound, [&](VerificationReport& r, Rng& rng) {
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
      const GridFunction f = random_test_function(d1, g, rng);
      const GridFunction m = maximal_apply(f, d1);
      for (std::size_t j = 0; j < f.size(); ++j) ok = ok && m[j] >= std::fabs(f[j]);
    }
    r.pass = ok;
  });
  rec.run("maximal_variants", "anisotropic against Euclidean balls (2-D)", CheckKind::record,
          [&](VerificationReport& r, Rng& rng) {
            const Dilation d2 = Dilation::make(parse_matrix("2 1; 0 2"));
            const Grid g2{2, 2.0, 48};
            const GridFunction f = random_test_function(d2, g2, rng);
            const GridFunction a = maximal_apply(f, d2, std::nullopt, BallShape::anisotropic);
            const GridFunction b = maximal_apply(f, d2, std::nullopt, BallShape::euclidean);
            double lo = INFINITY, hi = 0.0;
            for (std::size_t j = 0; j < f.size(); ++j) {
              if (b[j] > 0.0) {
                lo = std::min(lo, a[j] / b[j]);
                hi = std::max(hi, a[j] / b[j]);
              }
            }
            r.measured["min_ratio"] = lo;
            r.measured["max_ratio"] = hi;
          });
  auto sweep = [&](const std::string& opname, VerificationReport& r) {
    const Grid gs{1, 8.0, 512};
    SweepOptions so;
    so.base = constant_params(0.25, 2.0, 2.0, 1.0);
    for (int i = 1; i <= 9; ++i) so.alphas.push_back(0.1 * i * so.base.delta2);
    so.lambdas = {0.0, 0.25};
    so.lambda_relative = true;
    so.small_size = 25;
    const auto family = scale_family(d1, gs, 100, cfg.seed);
    const auto table = boundedness_sweep(parse_operator(opname), d1, family, so);
    Json cells = Json::array();
    for (const auto& c : table.cells) {
      cells.push_back({{"alpha", c.alpha}, {"lambda", c.lambda}, {"admissible", c.admissible},
                       {"sup_small", c.sup_small}, {"sup_large", c.sup_large}, {"growth", c.growth}});
    }
    r.inputs["family"] = {25, 100};
    r.measured["cells"] = cells;
    return table;
  };
  rec.run("sweep[hardy]", "sup of the operator ratio is stable inside the admissible region",
          CheckKind::bound, [&](VerificationReport& r, Rng&) {
            r.bound = 1.5;
            r.pass = sweep("hardy", r).pass;
          });
  rec.run("sweep[identity]", "the identity gives ratio one in every cell", CheckKind::identity,
          [&](VerificationReport& r, Rng&) {
            const auto t = sweep("identity", r);
            r.pass = std::all_of(t.cells.begin(), t.cells.end(),
                                 [](const SweepCell& c) { return c.sup_small == 1.0 && c.sup_large == 1.0; });
          });
  return rec.take();
}

// ---------------------------------------------------------------- atoms

std::vector<VerificationReport> atoms_suite(const SuiteConfig& cfg) {
  Recorder rec("atoms", cfg);
  const Dilation d1 = Dilation::make(parse_matrix("2"));
  const Grid g{1, 2.0, 4096};
  auto hp = constant_params(0.5, 2.0, 2.0, 1.0);

  rec.run("haar[s=0]", "Haar atom satisfies the atom conditions with s = 0", CheckKind::identity,
          [&](VerificationReport& r, Rng&) {
            const Atom a = atom_make(AtomKind::haar, 0, 0, d1, g, hp);
            const auto rep = atom_validate(a.data, 0, d1, hp, 0);
            r.measured["norm"] = rep.norm;
            r.measured["bound"] = rep.bound;
            r.measured["s_min"] = rep.s_min;
            r.pass = rep.pass;
          });
  rec.run("haar[s=1]", "Haar atom has first moment -1/4", CheckKind::identity, [&](VerificationReport& r, Rng&) {
    const Atom a = atom_make(AtomKind::haar, 0, 0, d1, g, hp);
    const auto rep = atom_validate(a.data, 0, d1, hp, 1);
    const double m1 = rep.moments.at(1).value;
    r.measured["first_moment"] = m1;
    r.bound = 1e-8;
    r.pass = !rep.pass && std::fabs(m1 + 0.25) <= 1e-8;
  });
  rec.run("bump_atoms", "moment-corrected bumps pass validation", CheckKind::identity,
          [&](VerificationReport& r, Rng&) {
            bool ok = true;
            Json fails = Json::array();
            for (int k = -1; k <= 1; ++k) {
              for (int s = 0; s <= 4; ++s) {
                const Atom a = atom_make(AtomKind::bump_corrected, k, s, d1, g, hp);
                const auto rep = atom_validate(a.data, k, d1, hp, s);
                if (!rep.pass || std::fabs(rep.norm / rep.bound - 1.0) > 1e-9) {
                  ok = false;
                  fails.push_back({k, s});
                }
              }
            }
            const Dilation d2 = Dilation::make(parse_matrix("2 1; 0 2"));
            const Grid g2{2, 2.0, 96};
            for (int s = 0; s <= 2; ++s) {
              const Atom a = atom_make(AtomKind::bump_corrected, 0, s, d2, g2, hp);
              if (!atom_validate(a.data, 0, d2, hp, s).pass) {
                ok = false;
                fails.push_back({"2d", s});
              }
            }
            r.measured["failures"] = fails;
            r.pass = ok;
          });
  rec.run("far_field[hardy,haar]", "Hardy operator vanishes far from a mean-zero atom", CheckKind::identity,
          [&](VerificationReport& r, Rng&) {
            const Atom a = atom_make(AtomKind::haar, 0, 0, d1, g, hp);
            const auto rep = size_condition_check(parse_operator("hardy"), a, d1);
            r.measured["constant"] = rep.constant;
            r.measured["points"] = rep.points;
            r.measured["exact_zero"] = rep.exact_zero;
            r.pass = rep.pass && rep.exact_zero;
          });
  rec.run("far_field[hardy,bump]", "Hardy operator vanishes far from corrected bumps", CheckKind::identity,
          [&](VerificationReport& r, Rng&) {
            bool exact = true;
            double c = 0.0;
            for (int s = 0; s <= 4; ++s) {
              const Atom a = atom_make(AtomKind::bump_corrected, -1, s, d1, g, hp);
              const auto rep = size_condition_check(parse_operator("hardy"), a, d1);
              exact = exact && rep.exact_zero && rep.pass;
              c = std::max(c, rep.constant);
            }
            r.measured["max_constant"] = c;
            r.measured["exact_zero"] = exact;
            r.pass = exact;
          });
  rec.run("far_field[identity]", "identity vanishes off the atom support", CheckKind::identity,
          [&](VerificationReport& r, Rng&) {
            const Atom a = atom_make(AtomKind::haar, 0, 0, d1, g, hp);
            const auto rep = size_condition_check(OperatorSpec{}, a, d1);
            r.measured["constant"] = rep.constant;
            r.pass = rep.pass && rep.constant == 0.0;
          });
  rec.run("far_field[riesz]", "truncated Riesz far-field constant across scales", CheckKind::record,
          [&](VerificationReport& r, Rng&) {
            const Grid gr{1, 8.0, 1024};
            Json cs = Json::array();
            for (int k = -1; k <= 1; ++k) {
              const Atom a = atom_make(AtomKind::haar, k, 0, d1, gr, hp);
              OperatorSpec op{OperatorKind::truncated_riesz, riesz_min_cutoff(d1, gr), std::nullopt,
                              BallShape::anisotropic};
              cs.push_back(size_condition_check(op, a, d1).constant);
            }
            r.measured["constants"] = cs;
          });
  rec.run("mollifier_mass", "dilates phi_k keep unit mass", CheckKind::identity, [&](VerificationReport& r, Rng&) {
    const Mollifier phi = Mollifier::make(d1);
    const Grid gm{1, 8.0, 4096};
    double worst = 0.0;
    for (int k = -2; k <= 2; ++k) worst = std::max(worst, std::fabs(dilate_phi(phi, gm, k).integral() - 1.0));
    r.measured["max_mass_error"] = worst;
    r.bound = 1e-6;
    r.pass = worst <= 1e-6;
  });
  rec.run("atomic_sum", "radial maximal proxy of an atomic sum against the coefficient norm",
          CheckKind::bound, [&](VerificationReport& r, Rng& rng) {
            const Grid ga{1, 4.0, 1024};
            const Mollifier phi = Mollifier::make(d1);
            std::uniform_int_distribution<int> kd(-2, 1);
            std::uniform_int_distribution<int> sd(0, 2);
            std::uniform_real_distribution<double> ld(-1.0, 1.0);
            double worst = 0.0, lo = INFINITY, hi = 0.0;
            for (int t = 0; t < 5; ++t) {
              std::vector<Atom> atoms;
              std::vector<double> lam;
              for (int j = 0; j < 3; ++j) {
                atoms.push_back(atom_make(AtomKind::bump_corrected, kd(rng), sd(rng), d1, ga, hp));
                lam.push_back(ld(rng));
              }
              const auto a = atomic_sum_check(atoms, lam, d1, hp, phi);
              for (double& v : lam) v *= 2.0;
              const auto b = atomic_sum_check(atoms, lam, d1, hp, phi);
              worst = std::max(worst, rel_err(b.ratio, a.ratio));
              lo = std::min(lo, a.ratio);
              hi = std::max(hi, a.ratio);
            }
            r.measured["ratio_range"] = {lo, hi};
            r.measured["scaling_error"] = worst;
            r.bound = 1e-9;
            r.pass = std::isfinite(hi) && worst <= 1e-9;
          });
  return rec.take();
}

using SuiteFn = std::vector<VerificationReport> (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"geometry", geometry_suite}, {"lebesgue", lebesgue_suite},   {"grandseq", grandseq_suite},
      {"herz", herz_suite},         {"algebra", algebra_suite},     {"operators", operators_suite},
      {"atoms", atoms_suite}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<VerificationReport> run_suite(const std::string& name, const SuiteConfig& config) {
  if (name.empty()) throw Error(ErrorCode::ConfigError, "empty suite name");
  std::vector<VerificationReport> out;
  if (name == "all") {
    std::vector<std::future<std::vector<VerificationReport>>> jobs;
    for (const auto& [n, fn] : registry()) jobs.push_back(std::async(std::launch::async, fn, std::cref(config)));
    for (auto& j : jobs) {
      auto part = j.get();
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  } else {
    const auto it = std::find_if(registry().begin(), registry().end(),
                                 [&](const auto& e) { return e.first == name; });
    if (it == registry().end()) throw Error(ErrorCode::ConfigError, "unknown suite '" + name + "'");
    out = it->second(config);
  }
  sort_reports(out);
  return out;
}

}  // namespace herzlab
