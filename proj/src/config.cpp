#include "herzlab/config.hpp"

#include <algorithm>
#include <sstream>

#include "herzlab/error.hpp"
#include "herzlab/io.hpp"

namespace herzlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": empty key");
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    cfg.entries_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) { return parse(read_text(path)); }

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double d = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, key + ": '" + *v + "' is not a number");
  }
}

long Config::get_int(const std::string& key, long fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const long d = std::stol(*v, &used);
    if (used != v->size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, key + ": '" + *v + "' is not an integer");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw Error(ErrorCode::ConfigError, key + ": '" + *v + "' is not a boolean");
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

Dilation dilation_from(const Config& cfg) {
  return Dilation::make(parse_matrix(cfg.get_or("dilation.matrix", "2")));
}

Grid grid_from(const Config& cfg, int dim) {
  Grid g{dim, cfg.get_double("grid.half_width", 1.0),
         static_cast<int>(cfg.get_int("grid.resolution", dim == 1 ? 4096 : 128))};
  validate(g);
  return g;
}

HerzSpaceParams params_from(const Config& cfg) {
  HerzSpaceParams p;
  if (auto a = cfg.get("herz.alpha")) p.alpha = parse_exponent(*a);
  if (auto q = cfg.get("herz.q")) p.q = parse_exponent(*q);
  p.p = cfg.get_double("herz.p", p.p);
  p.theta = cfg.get_double("herz.theta", p.theta);
  p.lambda = cfg.get_double("herz.lambda", p.lambda);
  p.homogeneous = cfg.get_bool("herz.homogeneous", p.homogeneous);
  // Without an explicit value, constant q gives delta2 = 1 - 1/q.
  const double fallback = p.q.is_constant() ? 1.0 - 1.0 / p.q.at_origin() : p.delta2;
  p.delta2 = cfg.get_double("herz.delta2", fallback);
  try {
    p.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  return p;
}

}  // namespace herzlab
