#pragma once

#include <string>
#include <vector>

#include "herzlab/config.hpp"
#include "herzlab/report.hpp"

namespace herzlab {

/// geometry, lebesgue, grandseq, herz, algebra, operators, atoms.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all" (in parallel, merged in a stable
/// (suite, check) order). Throws ConfigError for an empty or unknown name.
/// Individual check failures are reported, never thrown.
std::vector<VerificationReport> run_suite(const std::string& name, const SuiteConfig& config);

}  // namespace herzlab
