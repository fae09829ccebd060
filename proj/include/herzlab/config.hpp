#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "herzlab/dilation.hpp"
#include "herzlab/grid.hpp"
#include "herzlab/herz.hpp"

namespace herzlab {

/// Plain-text key=value configuration with dotted keys ("herz.alpha = log:0.3,0.2").
/// '#' starts a comment; later assignments override earlier ones.
class Config {
 public:
  /// Throws ConfigError on a line without '=' or with an empty key.
  static Config parse(const std::string& text);
  /// Throws IoError when the file cannot be read.
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  /// Throw ConfigError when the value does not parse.
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

/// dilation.matrix, default "2".
Dilation dilation_from(const Config& cfg);
/// grid.half_width (default 1) and grid.resolution (default 4096 in 1-D, 128 in 2-D).
Grid grid_from(const Config& cfg, int dim);
/// herz.{alpha,q,p,theta,lambda,homogeneous,delta2}; delta2 defaults to 1 - 1/q for constant q.
HerzSpaceParams params_from(const Config& cfg);

struct SuiteConfig {
  std::uint64_t seed = 7;
  Config values;
  std::filesystem::path out_dir = "reports";
  bool include_runtime = false;
};

}  // namespace herzlab
