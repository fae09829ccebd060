#pragma once

#include <optional>
#include <string>
#include <vector>

#include "herzlab/io.hpp"

namespace herzlab {

/// What backs a check: an exact identity, an independent oracle, an
/// inequality with an explicit bound, or a recorded (not asserted) value.
enum class CheckKind { identity, oracle, bound, record };

struct VerificationReport {
  std::string suite;
  std::string check;
  std::string anchor;  ///< the statement being exercised, in words
  CheckKind kind = CheckKind::bound;
  Json inputs = Json::object();
  Json measured = Json::object();
  std::optional<double> bound;
  bool pass = false;
  double runtime_ms = 0.0;

  /// FNV-1a hash of the serialized inputs, as 16 hex digits.
  std::string inputs_digest() const;
  Json to_json(bool include_runtime = false) const;
};

std::string to_string(CheckKind kind);

/// Stable sort by (suite, check).
void sort_reports(std::vector<VerificationReport>& reports);
Json reports_to_json(const std::vector<VerificationReport>& reports, bool include_runtime = false);
/// suite,check,kind,pass,bound,digest
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

}  // namespace herzlab
