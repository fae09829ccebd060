// herzlab command-line front end.
//
// Exit codes: 0 everything passed, 1 a check failed, 2 usage/config/io error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include "herzlab/atoms.hpp"
#include "herzlab/config.hpp"
#include "herzlab/error.hpp"
#include "herzlab/herz.hpp"
#include "herzlab/io.hpp"
#include "herzlab/operators.hpp"
#include "herzlab/oracles.hpp"
#include "herzlab/report.hpp"
#include "herzlab/suites.hpp"
#include "herzlab/synth.hpp"

namespace fs = std::filesystem;
using namespace herzlab;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string config_path;
  std::uint64_t seed = 7;
  std::string out;
  int resolution = 0;
  std::string format = "json";
};

Config load_config(const Globals& g) {
  Config cfg = g.config_path.empty() ? Config{} : Config::load(g.config_path);
  if (g.resolution > 0) cfg.set("grid.resolution", std::to_string(g.resolution));
  return cfg;
}

// Writes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text(g.out, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// --- norm -------------------------------------------------------------------

int cmd_norm(const Globals& g, const std::string& space, const std::string& input) {
  const Config cfg = load_config(g);
  const Dilation d = dilation_from(cfg);
  HerzSpaceParams params = params_from(cfg);
  if (space == "nonhomog") params.homogeneous = false;
  if (space == "herz-morrey" && params.lambda == 0.0 && !cfg.has("herz.lambda")) {
    throw Error(ErrorCode::ConfigError, "herz-morrey needs herz.lambda");
  }
  const GridFunction f = read_grid_csv(input);
  if (f.grid().dim != d.dim()) throw Error(ErrorCode::ConfigError, "input dimension differs from the dilation");

  const HerzEvaluator ev(d, f.grid(), params);
  Json j;
  j["space"] = space;
  if (space == "herz-morrey") {
    const auto r = ev.herz_morrey(f);
    j["norm"] = r.norm;
    j["tail_bound"] = r.tail_bound;
    j["per_k_terms"] = sequence_to_json(r.per_k_terms);
    j["argmax_eps"] = r.argmax_eps;
    j["argmax_L"] = r.argmax_L;
  } else {
    const auto r = ev.grand_herz(f);
    j["norm"] = r.norm;
    j["tail_bound"] = r.tail_bound;
    j["per_k_terms"] = sequence_to_json(r.per_k_terms);
    j["argmax_eps"] = r.argmax_eps;
    j["argmax_L"] = nullptr;
  }
  j["params"] = params_to_json(params);
  emit(g, dump(j));
  return kPass;
}

// --- decompose --------------------------------------------------------------

int cmd_decompose(const Globals& g, const std::string& input) {
  if (g.out.empty()) throw Error(ErrorCode::ConfigError, "decompose needs --out DIR");
  const Config cfg = load_config(g);
  const Dilation d = dilation_from(cfg);
  const HerzSpaceParams params = params_from(cfg);
  const GridFunction f = read_grid_csv(input);
  const auto dec = block_decompose(f, d, params);
  write_decomposition(dec, g.out);

  const GridFunction back = block_reconstruct(dec);
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::fabs(back[i] - f[i]));
  Json j;
  j["blocks"] = dec.blocks.size();
  j["coefficients"] = sequence_to_json(dec.coefficient_sequence());
  j["seq_functional"] = seq_functional(dec);
  j["reconstruction_error"] = err;
  j["directory"] = g.out;
  std::cout << dump(j);
  return err <= 1e-12 ? kPass : kCheckFailed;
}

// --- atoms ------------------------------------------------------------------

int cmd_atoms_make(const Globals& g, const std::string& kind, int k, int s) {
  if (g.out.empty()) throw Error(ErrorCode::ConfigError, "atoms make needs --out STEM");
  const Config cfg = load_config(g);
  const Dilation d = dilation_from(cfg);
  const HerzSpaceParams params = params_from(cfg);
  AtomKind ak;
  if (kind == "haar") ak = AtomKind::haar;
  else if (kind == "bump") ak = AtomKind::bump_corrected;
  else throw Error(ErrorCode::ConfigError, "unknown atom kind '" + kind + "'");
  const Atom atom = atom_make(ak, k, s, d, grid_from(cfg, d.dim()), params);
  const AtomReport rep = atom_validate(atom.data, k, d, params, s);
  write_atom(atom, rep, g.out);
  std::cout << dump(atom_report_to_json(rep));
  return rep.pass ? kPass : kCheckFailed;
}

int cmd_atoms_validate(const Globals& g, const std::string& stem, std::optional<int> s) {
  const Config cfg = load_config(g);
  const Dilation d = dilation_from(cfg);
  const Atom atom = read_atom(stem);
  const HerzSpaceParams params = g.config_path.empty() ? *atom.params : params_from(cfg);
  const AtomReport rep = atom_validate(atom.data, atom.k, d, params, s.value_or(atom.s));
  emit(g, dump(atom_report_to_json(rep)));
  return rep.pass ? kPass : kCheckFailed;
}

int cmd_atoms_sumcheck(const Globals& g, const std::vector<std::string>& stems, std::vector<double> lambdas) {
  const Config cfg = load_config(g);
  const Dilation d = dilation_from(cfg);
  std::vector<Atom> atoms;
  for (const auto& s : stems) atoms.push_back(read_atom(s));
  if (atoms.empty()) throw Error(ErrorCode::ConfigError, "no atoms given");
  if (lambdas.empty()) lambdas.assign(atoms.size(), 1.0);
  if (lambdas.size() != atoms.size()) throw Error(ErrorCode::ConfigError, "one --lambda per atom");
  const HerzSpaceParams params = g.config_path.empty() ? *atoms.front().params : params_from(cfg);
  const auto rep = atomic_sum_check(atoms, lambdas, d, params, Mollifier::make(d));
  Json j;
  j["herz_of_maximal"] = rep.herz_of_maximal;
  j["coefficient_norm"] = rep.coefficient_norm;
  j["ratio"] = rep.ratio;
  j["degenerate"] = rep.degenerate;
  j["pass"] = rep.pass;
  emit(g, dump(j));
  return rep.pass ? kPass : kCheckFailed;
}

// --- sweep ------------------------------------------------------------------

// "scales=N" or "N": N family members; the small family is the first quarter.
std::size_t parse_family(const std::string& text) {
  std::string v = text;
  if (const auto eq = v.find('='); eq != std::string::npos) {
    if (v.substr(0, eq) != "scales") throw Error(ErrorCode::ConfigError, "unknown family '" + text + "'");
    v = v.substr(eq + 1);
  }
  try {
    const long n = std::stol(v);
    if (n >= 4) return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ConfigError, "family size must be an integer >= 4: '" + text + "'");
}

int cmd_sweep(const Globals& g, const std::string& op, const std::string& alphas, const std::string& lambdas,
              bool relative, const std::string& family, const std::string& svg) {
  const Config cfg = load_config(g);
  const Dilation d = dilation_from(cfg);
  SweepOptions so;
  so.base = params_from(cfg);
  so.alphas = parse_range(alphas);
  so.lambdas = parse_range(lambdas);
  so.lambda_relative = relative;
  const std::size_t n = parse_family(family);
  so.small_size = n / 4;
  const Grid grid = grid_from(cfg, d.dim());
  const auto fam = scale_family(d, grid, n, g.seed);
  const SweepTable table = boundedness_sweep(parse_operator(op), d, fam, so);
  if (g.format == "json") {
    Json j;
    j["operator"] = table.op;
    j["delta2"] = table.delta2;
    j["small_size"] = table.small_size;
    j["large_size"] = table.large_size;
    j["seed"] = g.seed;
    Json cells = Json::array();
    for (const auto& c : table.cells) {
      cells.push_back({{"alpha", c.alpha}, {"lambda", c.lambda}, {"admissible", c.admissible},
                       {"sup_small", c.sup_small}, {"sup_large", c.sup_large}, {"growth", c.growth},
                       {"stable", c.stable}});
    }
    j["cells"] = cells;
    j["pass"] = table.pass;
    emit(g, dump(j));
  } else {
    emit(g, table.to_csv());
  }
  if (!svg.empty()) write_text(svg, table.to_svg());
  return table.pass ? kPass : kCheckFailed;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const Globals& g, const std::string& suite, bool runtime) {
  SuiteConfig sc;
  sc.seed = g.seed;
  sc.values = load_config(g);
  sc.include_runtime = runtime || sc.values.get_bool("report.runtime", false);
  sc.out_dir = g.out.empty() ? fs::path(sc.values.get_or("report.dir", "reports")) : fs::path(g.out);
  const auto reports = run_suite(suite, sc);

  fs::create_directories(sc.out_dir);
  write_text(sc.out_dir / (suite + ".json"), dump(reports_to_json(reports, sc.include_runtime)));
  write_text(sc.out_dir / (suite + ".csv"), reports_to_csv(reports));

  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (!r.pass) ++failed;
    if (g.format == "csv") continue;
    std::printf("%-4s %-10s %s\n", r.pass ? "ok" : "FAIL", r.suite.c_str(), r.check.c_str());
  }
  if (g.format == "csv") std::cout << reports_to_csv(reports);
  std::printf("%zu checks, %zu failed; reports in %s\n", reports.size(), failed, sc.out_dir.c_str());
  return failed == 0 ? kPass : kCheckFailed;
}

// --- oracle -----------------------------------------------------------------

int cmd_oracle(const Globals& g, const std::string& target) {
  const Config cfg = load_config(g);
  Json j;
  j["target"] = target;
  if (target == "constant_herz") {
    const double b = cfg.get_double("oracle.b", 2.0), alpha = cfg.get_double("oracle.alpha", 2.0),
                 q = cfg.get_double("oracle.q", 2.0), p = cfg.get_double("oracle.p", 1.0),
                 theta = cfg.get_double("oracle.theta", 1.0), lambda = cfg.get_double("oracle.lambda", 0.0);
    j["inputs"] = {{"b", b}, {"alpha", alpha}, {"q", q}, {"p", p}, {"theta", theta}, {"lambda", lambda}};
    j["value"] = lambda == 0.0 ? oracle::constant_herz(b, alpha, q, p, theta)
                               : oracle::constant_herz_morrey(b, alpha, q, p, theta, lambda);
  } else if (target == "grand_seq_dense") {
    const double p = cfg.get_double("oracle.p", 1.0), theta = cfg.get_double("oracle.theta", 1.0);
    std::vector<double> x{1.0};
    if (const auto s = cfg.get("oracle.sequence")) x = parse_range(*s);
    j["inputs"] = {{"sequence", x}, {"p", p}, {"theta", theta}};
    j["value"] = oracle::grand_seq_dense(x, p, theta);
  } else if (target == "luxemburg_algebraic") {
    j["inputs"] = "indicator of [0,2] with p = 2 on [0,1) and p = 4 on [1,2)";
    j["value"] = oracle::luxemburg_two_piece();
  } else {
    throw Error(ErrorCode::UnknownTarget, "unknown oracle target '" + target + "'");
  }
  emit(g, dump(j));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"herzlab: anisotropic grand Herz-type norms and their verification suites"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "key=value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--out", g.out, "output file, directory or stem");
  app.add_option("--resolution", g.resolution, "grid cells per axis (overrides grid.resolution)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));

  std::function<int()> action;

  auto* norm = app.add_subcommand("norm", "grand Herz / Herz-Morrey norm of a grid CSV");
  std::string space = "herz", input;
  norm->add_option("--space", space)->check(CLI::IsMember({"herz", "herz-morrey", "nonhomog"}));
  norm->add_option("--input", input, "grid CSV")->required()->check(CLI::ExistingFile);
  norm->callback([&] { action = [&] { return cmd_norm(g, space, input); }; });

  auto* decompose = app.add_subcommand("decompose", "canonical block decomposition into --out DIR");
  decompose->add_option("--input", input, "grid CSV")->required()->check(CLI::ExistingFile);
  decompose->callback([&] { action = [&] { return cmd_decompose(g, input); }; });

  auto* atoms = app.add_subcommand("atoms", "make, validate and sum central atoms");
  atoms->require_subcommand(1);
  auto* make = atoms->add_subcommand("make", "construct an atom and write STEM.csv/STEM.json");
  std::string kind = "bump";
  int k = 0, s = 0;
  make->add_option("--kind", kind)->check(CLI::IsMember({"haar", "bump"}));
  make->add_option("--k", k, "support scale");
  make->add_option("--s", s, "vanishing moment order");
  make->callback([&] { action = [&] { return cmd_atoms_make(g, kind, k, s); }; });

  auto* validate = atoms->add_subcommand("validate", "validate a stored atom");
  std::optional<int> vs;
  validate->add_option("--input", input, "atom stem")->required();
  validate->add_option("--s", vs, "moment order (defaults to the stored one)");
  validate->callback([&] { action = [&] { return cmd_atoms_validate(g, input, vs); }; });

  auto* sumcheck = atoms->add_subcommand("sumcheck", "radial maximal bound for a finite atomic sum");
  std::vector<std::string> stems;
  std::vector<double> lambdas;
  sumcheck->add_option("--input", stems, "atom stems")->required();
  sumcheck->add_option("--lambda", lambdas, "coefficients (default all 1)");
  sumcheck->callback([&] { action = [&] { return cmd_atoms_sumcheck(g, stems, lambdas); }; });

  auto* sweep = app.add_subcommand("sweep", "operator boundedness sweep over (alpha, lambda)");
  std::string op = "hardy", alpha_r = "0.05:0.95:0.05", lambda_r = "0", family = "scales=100", svg;
  bool relative = false;
  sweep->add_option("--operator", op, "identity|hardy|riesz[:cutoff]|maximal|maximal-euclid");
  sweep->add_option("--alpha", alpha_r, "a:b:step or comma list");
  sweep->add_option("--lambda", lambda_r, "a:b:step or comma list");
  sweep->add_flag("--lambda-relative", relative, "lambda values are fractions of alpha");
  sweep->add_option("--family", family, "scales=N: N seeded test functions");
  sweep->add_option("--svg", svg, "also write an SVG heatmap");
  sweep->callback([&] { action = [&] { return cmd_sweep(g, op, alpha_r, lambda_r, relative, family, svg); }; });

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  bool runtime = false;
  verify->add_option("suite", suite, "geometry|lebesgue|grandseq|herz|algebra|operators|atoms|all");
  verify->add_flag("--runtime", runtime, "include runtimes in the JSON report");
  verify->callback([&] { action = [&] { return cmd_verify(g, suite, runtime); }; });

  auto* orc = app.add_subcommand("oracle", "independent reference values");
  std::string target;
  orc->add_option("target", target, "constant_herz|grand_seq_dense|luxemburg_algebraic")->required();
  orc->callback([&] { action = [&] { return cmd_oracle(g, target); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "herzlab: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ConfigError:
      case ErrorCode::IoError:
      case ErrorCode::UnknownTarget:
      case ErrorCode::BadParams:
        return kUsage;
      default:
        return kCheckFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "herzlab: " << e.what() << "\n";
    return kUsage;
  }
}
