// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace stablespec::tools {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  double alpha = 1.5;
  std::uint64_t seed = 20240607;
  // Called after every check, for streaming output.
  std::function<void(const CheckResult&)> on_result;
};

// The twelve acceptance criteria at their stated tolerances.
std::vector<CheckResult> run_acceptance(const SuiteOptions& opt);

// A fast table of module invariants (a few seconds).
std::vector<CheckResult> run_quick(const SuiteOptions& opt);

// "PASS  [ 3] name: detail (1.2 s)"
std::string format_line(const CheckResult& r);
void print_summary(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace stablespec::tools
