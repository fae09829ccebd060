#include "herzlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>

namespace herzlab {

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::identity: return "identity";
    case CheckKind::oracle: return "oracle";
    case CheckKind::bound: return "bound";
    case CheckKind::record: return "record";
  }
  return "unknown";
}

std::string VerificationReport::inputs_digest() const {
  const std::string s = inputs.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

Json VerificationReport::to_json(bool include_runtime) const {
  Json j;
  j["suite"] = suite;
  j["check"] = check;
  j["anchor"] = anchor;
  j["kind"] = to_string(kind);
  j["inputs"] = inputs;
  j["inputs_digest"] = inputs_digest();
  j["measured"] = measured;
  if (bound) {
    j["bound"] = *bound;
  } else {
    j["bound"] = nullptr;
  }
  j["pass"] = pass;
  if (include_runtime) j["runtime_ms"] = runtime_ms;
  return j;
}

void sort_reports(std::vector<VerificationReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return a.suite != b.suite ? a.suite < b.suite : a.check < b.check;
  });
}

Json reports_to_json(const std::vector<VerificationReport>& reports, bool include_runtime) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(r.to_json(include_runtime));
  return arr;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "suite,check,kind,pass,bound,inputs_digest\n";
  for (const auto& r : reports) {
    char bound[32] = "";
    if (r.bound) *std::to_chars(bound, bound + sizeof bound - 1, *r.bound).ptr = '\0';
    out += csv_field(r.suite) + "," + csv_field(r.check) + "," + to_string(r.kind) + "," + (r.pass ? "1" : "0") + "," +
           bound + "," + r.inputs_digest() + "\n";
  }
  return out;
}

}  // namespace herzlab
