// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "stablespec/numerics/grid.hpp"

namespace stablespec::tools {

inline constexpr const char* kConfigEnv = "STABLESPEC_CONFIG";

struct GridSpec {
  double lo = 1e-4;
  double hi = 50.0;
  long n = 512;
  std::string spacing = "logarithmic";

  numerics::Grid build() const;
};

struct OutputSpec {
  std::string path;  // empty: stdout
  std::string format = "csv";
};

struct MCSpec {
  std::uint64_t seed = 20240607;
  long n_paths = 100000;
  int n_steps = 500;
};

// Resolved settings for one invocation: defaults, then the config file,
// then command-line flags.
struct RunConfig {
  double alpha = 1.5;
  // quad: operator quadrature, kernel: heat kernel, solve: Cauchy solver.
  std::map<std::string, double> tolerances{{"quad", 1e-10}, {"kernel", 1e-10}, {"solve", 1e-8}};
  GridSpec grid;
  OutputSpec output;
  MCSpec mc;

  double tol(const std::string& key) const;
  // Throws InvalidArgument naming the offending field.
  void validate() const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
// Only the keys present override `c`; unknown keys are rejected.
void merge_json(RunConfig& c, const nlohmann::json& j);
RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace stablespec::tools
