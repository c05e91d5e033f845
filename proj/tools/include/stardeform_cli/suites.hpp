#pragma once

#include <string>
#include <vector>

#include "stardeform_cli/config.hpp"

namespace sd::cli {

// One identity checked by a suite. The residual must not exceed
// max(cfg.tol, floor); floor records the accuracy the underlying numerical
// method is built for (zero for exact checks).
struct CheckResult {
  std::string suite;
  std::string name;
  std::string anchor;  // the identity, written out
  double residual = 0.0;
  double floor = 0.0;
  bool exact = false;
  bool passed = false;
};

const std::vector<std::string>& suite_names();  // without "all"

// Runs one suite or "all". UsageError for an unknown name; sd::DomainError
// when cfg.tau lies outside the region a suite needs.
std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg);

}  // namespace sd::cli
