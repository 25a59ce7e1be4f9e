// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "stablespec/specfun/alpha.hpp"

namespace stablespec::stablemc {

struct MCConfig {
  long n_paths = 100000;
  int n_steps = 500;
  std::uint64_t seed = 20240607;
  specfun::AlphaParams params{1.5};
  // Upper bound on n_paths * n_steps.
  double budget = 2e9;

  // n_paths, n_steps >= 1 and within the budget; throws BudgetExceeded or
  // InvalidArgument.
  void validate() const;
  std::string canonical() const;
};

// FNV-1a of the canonical config text, as 16 hex digits.
std::string config_hash(const MCConfig& cfg);

struct PathEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n_paths)
  long n_paths = 0;
};

// Independent stream for path `path` under `seed`.
std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t path);

// Z_dt with E e^{z Z_dt} = e^{dt z^alpha}, z >= 0: Chambers-Mallows-Stuck
// with skewness -1 and scale (dt |cos(pi alpha / 2)|)^{1/alpha}.
double sample_stable_increment(double dt, std::mt19937_64& rng, const specfun::AlphaParams& p);

// X_t from x0 on an n_steps skeleton: Z_t - min(0, running skeleton minimum).
double simulate_reflected(double x0, double t, const MCConfig& cfg, std::uint64_t path);
// The same skeleton without reflection.
double simulate_free(double x0, double t, const MCConfig& cfg, std::uint64_t path);

using Fn = std::function<double(double)>;

// E_x0 f(X_t) for each f, all from the same n_paths reflected paths.
std::vector<PathEstimate> estimate_Ptf(const std::vector<Fn>& fs, double x0, double t, const MCConfig& cfg);
PathEstimate estimate_Ptf(const Fn& f, double x0, double t, const MCConfig& cfg);

// Pairwise sum in fixed order.
double pairwise_sum(const double* v, std::size_t n);

}  // namespace stablespec::stablemc
