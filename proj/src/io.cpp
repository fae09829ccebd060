#include "herzlab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "herzlab/error.hpp"

namespace herzlab {

namespace fs = std::filesystem;

namespace {

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_numbers(const std::string& line, ErrorCode code) {
  std::vector<double> out;
  const char* p = line.c_str();
  while (*p) {
    while (*p == ' ' || *p == ',' || *p == '\t' || *p == '\r') ++p;
    if (!*p) break;
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (end == p) throw Error(code, "cannot parse number in '" + line + "'");
    out.push_back(v);
    p = end;
  }
  return out;
}

}  // namespace

Eigen::MatrixXd parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    if (row.find_first_not_of(" \t,") == std::string::npos) continue;
    rows.push_back(parse_numbers(row, ErrorCode::ConfigError));
  }
  if (rows.empty()) throw Error(ErrorCode::ConfigError, "empty matrix");
  const auto cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorCode::ConfigError, "ragged matrix rows in '" + text + "'");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

std::string grid_to_csv(const GridFunction& f) {
  const Grid& g = f.grid();
  std::string out = "dim,half_width,resolution\n";
  out += std::to_string(g.dim) + "," + fmt(g.half_width) + "," + std::to_string(g.resolution) + "\n";
  const int n = g.resolution;
  if (g.dim == 1) {
    for (int i = 0; i < n; ++i) out += fmt(f[static_cast<std::size_t>(i)]) + "\n";
  } else {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        if (c) out += ',';
        out += fmt(f[g.flat(c, r)]);
      }
      out += '\n';
    }
  }
  return out;
}

GridFunction grid_from_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.size() < 2 || lines[0].rfind("dim", 0) != 0) {
    throw Error(ErrorCode::IoError, "grid CSV needs a 'dim,half_width,resolution' header");
  }
  const auto head = parse_numbers(lines[1], ErrorCode::IoError);
  if (head.size() != 3) throw Error(ErrorCode::IoError, "grid CSV header needs three values");
  Grid g{static_cast<int>(head[0]), head[1], static_cast<int>(head[2])};
  validate(g);
  std::vector<double> values;
  values.reserve(g.size());
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto row = parse_numbers(lines[i], ErrorCode::IoError);
    values.insert(values.end(), row.begin(), row.end());
  }
  if (values.size() != g.size()) {
    throw Error(ErrorCode::IoError, "grid CSV holds " + std::to_string(values.size()) +
                                        " samples, expected " + std::to_string(g.size()));
  }
  return GridFunction(g, std::move(values));
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

void write_grid_csv(const GridFunction& f, const fs::path& path) { write_text(path, grid_to_csv(f)); }

GridFunction read_grid_csv(const fs::path& path) { return grid_from_csv(read_text(path)); }

Json sequence_to_json(const Sequence& x) {
  Json j;
  j["offset"] = x.offset;
  j["values"] = x.values;
  if (x.index_set != IndexSet::integers) {
    j["index_set"] = x.index_set == IndexSet::nonnegative ? "nonnegative" : "positive";
  }
  return j;
}

Sequence sequence_from_json(const Json& j) {
  try {
    Sequence x;
    if (j.is_array()) {
      x.values = j.get<std::vector<double>>();
      return x;
    }
    x.offset = j.value("offset", 0);
    x.values = j.at("values").get<std::vector<double>>();
    const std::string set = j.value("index_set", std::string("integers"));
    if (set == "nonnegative") {
      x.index_set = IndexSet::nonnegative;
    } else if (set == "positive") {
      x.index_set = IndexSet::positive;
    } else if (set != "integers") {
      throw Error(ErrorCode::ConfigError, "unknown index set '" + set + "'");
    }
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad sequence JSON: ") + e.what());
  }
}

Json descriptor_to_json(const FunctionDescriptor& desc) {
  Json j;
  j["kind"] = desc.kind;
  j["k"] = desc.k;
  j["center"] = {desc.center[0], desc.center[1]};
  j["a"] = desc.a;
  j["b"] = desc.b;
  j["seed"] = desc.seed;
  j["amplitude"] = desc.amplitude;
  return j;
}

FunctionDescriptor descriptor_from_json(const Json& j) {
  try {
    FunctionDescriptor d;
    d.kind = j.at("kind").get<std::string>();
    d.k = j.value("k", 0);
    if (j.contains("center")) {
      const auto c = j.at("center").get<std::vector<double>>();
      for (std::size_t i = 0; i < c.size() && i < 2; ++i) d.center[i] = c[i];
    }
    d.a = j.value("a", 0.0);
    d.b = j.value("b", 0.0);
    d.seed = j.value("seed", std::uint64_t{0});
    d.amplitude = j.value("amplitude", 1.0);
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad function descriptor: ") + e.what());
  }
}

Json params_to_json(const HerzSpaceParams& params) {
  Json j;
  j["alpha"] = params.alpha.describe();
  j["p"] = params.p;
  j["q"] = params.q.describe();
  j["theta"] = params.theta;
  j["lambda"] = params.lambda;
  j["homogeneous"] = params.homogeneous;
  j["delta2"] = params.delta2;
  return j;
}

void write_decomposition(const BlockDecomposition& dec, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());
  Json manifest;
  manifest["grid"] = {{"dim", dec.grid.dim}, {"half_width", dec.grid.half_width},
                      {"resolution", dec.grid.resolution}};
  if (dec.params) manifest["params"] = params_to_json(*dec.params);
  Json blocks = Json::array();
  for (std::size_t j = 0; j < dec.ks.size(); ++j) {
    const std::string name = "block_" + std::to_string(dec.ks[j]) + ".csv";
    write_grid_csv(dec.blocks[j], dir / name);
    blocks.push_back({{"k", dec.ks[j]}, {"coefficient", dec.coefficients[j]}, {"file", name}});
  }
  manifest["blocks"] = blocks;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

BlockDecomposition read_decomposition(const fs::path& dir) {
  Json manifest;
  try {
    manifest = Json::parse(read_text(dir / "manifest.json"));
    BlockDecomposition dec;
    const auto& g = manifest.at("grid");
    dec.grid = Grid{g.at("dim").get<int>(), g.at("half_width").get<double>(), g.at("resolution").get<int>()};
    for (const auto& b : manifest.at("blocks")) {
      dec.ks.push_back(b.at("k").get<int>());
      dec.coefficients.push_back(b.at("coefficient").get<double>());
      dec.blocks.push_back(read_grid_csv(dir / b.at("file").get<std::string>()));
    }
    return dec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("bad decomposition manifest: ") + e.what());
  }
}

Json atom_report_to_json(const AtomReport& r) {
  Json moments = Json::array();
  for (const auto& m : r.moments) moments.push_back({{"beta", {m.beta0, m.beta1}}, {"value", m.value}});
  Json j;
  j["k"] = r.k;
  j["s"] = r.s;
  j["support_ok"] = r.support_ok;
  j["norm"] = r.norm;
  j["bound"] = r.bound;
  j["norm_ok"] = r.norm_ok;
  j["moments"] = moments;
  j["moment_tolerance"] = r.moment_tolerance;
  j["moments_ok"] = r.moments_ok;
  j["restricted"] = r.restricted;
  j["restricted_ok"] = r.restricted_ok;
  j["s_min"] = r.s_min;
  j["s_admissible"] = r.s_admissible;
  j["pass"] = r.pass;
  return j;
}

void write_atom(const Atom& atom, const AtomReport& report, const fs::path& stem) {
  fs::path csv = stem;
  csv += ".csv";
  fs::path meta = stem;
  meta += ".json";
  write_grid_csv(atom.data, csv);
  Json j;
  j["kind"] = atom.kind == AtomKind::haar ? "haar" : "bump_corrected";
  j["k"] = atom.k;
  j["s"] = atom.s;
  j["data"] = csv.filename().string();
  if (atom.params) j["params"] = params_to_json(*atom.params);
  j["report"] = atom_report_to_json(report);
  write_text(meta, j.dump(2) + "\n");
}

Atom read_atom(const fs::path& stem) {
  fs::path meta = stem;
  meta += ".json";
  fs::path csv = stem;
  csv += ".csv";
  try {
    const Json j = Json::parse(read_text(meta));
    Atom a{read_grid_csv(csv), j.at("k").get<int>(), j.at("s").get<int>(),
           j.value("kind", std::string("haar")) == "haar" ? AtomKind::haar : AtomKind::bump_corrected,
           nullptr};
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("bad atom metadata: ") + e.what());
  }
}

}  // namespace herzlab
