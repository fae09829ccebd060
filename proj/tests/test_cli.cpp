#include <filesystem>

#include "herzlab/config.hpp"
#include "herzlab/io.hpp"
#include "herzlab/report.hpp"
#include "herzlab/suites.hpp"
#include "herzlab/synth.hpp"
#include "support.hpp"

using namespace herzlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("herzlab_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing") {
  const Config c = Config::parse(
      "# comment\n"
      "dilation.matrix = \"2 1; 0 2\"\n"
      "herz.alpha = log:0.6,0.3   # trailing\n"
      "herz.q = const:4\n"
      "herz.lambda=0.1\n"
      "grid.resolution = 64\n");
  CHECK(c.get_or("dilation.matrix", "") == "2 1; 0 2");
  CHECK(dilation_from(c).b() == 4.0);
  CHECK(grid_from(c, 2).resolution == 64);
  CHECK(grid_from(c, 2).half_width == 1.0);
  const auto hp = params_from(c);
  CHECK(hp.alpha.describe() == "log:0.6,0.3");
  CHECK(hp.delta2 == doctest::Approx(0.75));
  CHECK(hp.lambda == 0.1);
  CHECK(c.get_double("missing", 3.5) == 3.5);
  CHECK_FALSE(c.has("missing"));
  CHECK_THROWS_CODE(Config::parse("no equals sign"), ConfigError);
  CHECK_THROWS_CODE(Config::parse("= 3"), ConfigError);
  CHECK_THROWS_CODE(Config::parse("x = abc").get_double("x", 0.0), ConfigError);
  CHECK_THROWS_CODE(params_from(Config::parse("herz.q = wobbly:2")), ConfigError);
  CHECK_THROWS_CODE(params_from(Config::parse("herz.p = 0.5")), ConfigError);
  CHECK_THROWS_CODE(Config::load("/nonexistent/herzlab.cfg"), IoError);
}

TEST_CASE("matrix parsing") {
  CHECK(parse_matrix("2")(0, 0) == 2.0);
  const auto m = parse_matrix(" 2 1 ;\n 0 2 ");
  CHECK(m.rows() == 2);
  CHECK(m(0, 1) == 1.0);
  CHECK_THROWS_CODE(parse_matrix("2 1; 0"), ConfigError);
  CHECK_THROWS_CODE(parse_matrix("two"), ConfigError);
  CHECK_THROWS_CODE(parse_matrix(""), ConfigError);
}

TEST_CASE("grid CSV round trip is bit exact") {
  auto rng = test_rng(60);
  for (const char* m : {"2", "2 1; 0 2"}) {
    const Dilation d = Dilation::make(parse_matrix(m));
    const Grid g{d.dim(), 1.5, d.dim() == 1 ? 100 : 20};
    const GridFunction f = random_test_function(d, g, rng);
    const GridFunction back = grid_from_csv(grid_to_csv(f));
    CHECK(back.grid() == g);
    CHECK(std::equal(f.values().begin(), f.values().end(), back.values().begin()));
  }
  CHECK_THROWS_CODE(grid_from_csv("1,1.0\n"), IoError);
  CHECK_THROWS_CODE(read_grid_csv("/nonexistent/f.csv"), IoError);
}

TEST_CASE("sequence and descriptor JSON") {
  const Sequence x{-3, {1.0, 0.0, 2.5}, IndexSet::nonnegative};
  const Sequence y = sequence_from_json(sequence_to_json(x));
  CHECK(y.offset == -3);
  CHECK(y.values == x.values);
  CHECK(y.index_set == IndexSet::nonnegative);
  CHECK(sequence_from_json(Json::parse("[1, 2]")).values == std::vector<double>{1, 2});

  const Dilation d = Dilation::make(parse_matrix("2"));
  const Grid g{1, 2.0, 256};
  FunctionDescriptor desc;
  desc.kind = "annulus";
  desc.k = -1;
  desc.amplitude = 2.0;
  const FunctionDescriptor back = descriptor_from_json(descriptor_to_json(desc));
  CHECK(back.kind == "annulus");
  CHECK(synthesize(back, d, g).sup_norm() == 2.0);
  desc.kind = "spiral";
  CHECK_THROWS_CODE(synthesize(desc, d, g), ConfigError);
}

TEST_CASE("decomposition and atom files") {
  const Dilation d = Dilation::make(parse_matrix("2"));
  const Grid g{1, 2.0, 512};
  HerzSpaceParams hp;
  hp.alpha = ExponentFunction::constant(0.4);
  auto rng = test_rng(61);
  const GridFunction f = random_test_function(d, g, rng);
  const auto dec = block_decompose(f, d, hp);
  const fs::path dir = scratch("dec");
  write_decomposition(dec, dir);
  CHECK(fs::exists(dir / "manifest.json"));
  const auto back = read_decomposition(dir);
  CHECK(back.ks == dec.ks);
  CHECK(back.coefficients == dec.coefficients);
  const GridFunction r = block_reconstruct(back);
  for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(std::fabs(r[i] - f[i]) <= 1e-12);

  const Atom a = atom_make(AtomKind::bump_corrected, 0, 2, d, g, hp);
  const fs::path stem = scratch("atom") / "a0";
  fs::create_directories(stem.parent_path());
  write_atom(a, atom_validate(a.data, 0, d, hp, 2), stem);
  const Atom b = read_atom(stem);
  CHECK(b.k == 0);
  CHECK(b.s == 2);
  CHECK(std::equal(a.data.values().begin(), a.data.values().end(), b.data.values().begin()));
  CHECK_THROWS_CODE(read_atom(scratch("none") / "x"), IoError);
}

TEST_CASE("report rows") {
  VerificationReport r;
  r.suite = "s";
  r.check = "c";
  r.anchor = "something holds";
  r.kind = CheckKind::bound;
  r.inputs["seed"] = 7;
  r.measured["ratio"] = 0.5;
  r.bound = 1.0;
  r.pass = true;
  r.runtime_ms = 12.0;
  const Json j = r.to_json();
  CHECK_FALSE(j.contains("runtime_ms"));
  CHECK(r.to_json(true).contains("runtime_ms"));
  CHECK(Json::parse(j.dump()) == j);
  CHECK(j["kind"] == "bound");
  CHECK(r.inputs_digest().size() == 16);
  VerificationReport r2 = r;
  r2.inputs["seed"] = 8;
  CHECK(r2.inputs_digest() != r.inputs_digest());
  std::vector<VerificationReport> v{r2, r};
  v[0].suite = "t";
  sort_reports(v);
  CHECK(v[0].suite == "s");
  CHECK(reports_to_csv(v).find("suite,check") == 0);
}

TEST_CASE("suite runner") {
  CHECK_THROWS_CODE(run_suite("", SuiteConfig{}), ConfigError);
  CHECK_THROWS_CODE(run_suite("nope", SuiteConfig{}), ConfigError);
  CHECK(suite_names().size() == 7);
  SuiteConfig sc;
  const auto a = run_suite("grandseq", sc);
  const auto b = run_suite("grandseq", sc);
  CHECK(reports_to_json(a).dump() == reports_to_json(b).dump());
  for (const auto& r : a) {
    CAPTURE(r.check);
    CHECK(r.pass);
    CHECK(r.inputs["seed"] == 7);
    CHECK_FALSE(r.anchor.empty());
  }
  sc.seed = 8;
  CHECK(reports_to_json(run_suite("grandseq", sc)).dump() != reports_to_json(a).dump());
}

TEST_CASE("CSV quotes check names with commas") {
  VerificationReport r;
  r.suite = "lebesgue";
  r.check = "log_holder[log(2,3)]";
  const std::string csv = reports_to_csv({r});
  CHECK(csv.find("lebesgue,\"log_holder[log(2,3)]\",") != std::string::npos);
}
