// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/stablemc/stablemc.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "stablespec/error.hpp"

namespace stablespec::stablemc {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();

struct Skeleton {
  double z;
  double running_min;
};

Skeleton run(double x0, double t, const MCConfig& cfg, std::uint64_t path) {
  auto rng = path_stream(cfg.seed, path);
  const double dt = t / cfg.n_steps;
  double z = x0;
  double m = x0;
  for (int i = 0; i < cfg.n_steps; ++i) {
    z += sample_stable_increment(dt, rng, cfg.params);
    m = std::min(m, z);
  }
  return {z, m};
}

}  // namespace

void MCConfig::validate() const {
  if (n_paths < 1 || n_steps < 1) throw Error(ErrorCode::InvalidArgument, "stablemc", "n_paths and n_steps must be >= 1");
  if (static_cast<double>(n_paths) * n_steps > budget) {
    std::ostringstream os;
    os << "n_paths * n_steps = " << static_cast<double>(n_paths) * n_steps << " exceeds the budget " << budget;
    throw Error(ErrorCode::BudgetExceeded, "stablemc", os.str());
  }
}

std::string MCConfig::canonical() const {
  std::ostringstream os;
  os.precision(17);
  os << "alpha=" << params.alpha << ";n_paths=" << n_paths << ";n_steps=" << n_steps << ";seed=" << seed;
  return os.str();
}

std::string config_hash(const MCConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : cfg.canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t path) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
  return std::mt19937_64(seq);
}

double sample_stable_increment(double dt, std::mt19937_64& rng, const specfun::AlphaParams& p) {
  const double a = p.alpha;
  std::uniform_real_distribution<double> uni(-0.5 * kPi, 0.5 * kPi);
  std::exponential_distribution<double> expo(1.0);
  const double v = uni(rng);
  const double w = expo(rng);
  // Skewness beta = -1: B = arctan(-tan(pi a/2))/a, S = (1 + tan^2(pi a/2))^{1/(2a)}.
  const double ta = std::tan(0.5 * kPi * a);
  const double b = std::atan(-ta) / a;
  const double s = std::pow(1.0 + ta * ta, 0.5 / a);
  const double x = s * std::sin(a * (v + b)) / std::pow(std::cos(v), 1.0 / a) *
                   std::pow(std::cos(v - a * (v + b)) / w, (1.0 - a) / a);
  const double sigma = std::pow(dt * std::abs(std::cos(0.5 * kPi * a)), 1.0 / a);
  return sigma * x;
}

double simulate_reflected(double x0, double t, const MCConfig& cfg, std::uint64_t path) {
  if (!(x0 >= 0.0) || !(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "stablemc", "need x0 >= 0 and t > 0");
  const auto s = run(x0, t, cfg, path);
  return s.z - std::min(s.running_min, 0.0);
}

double simulate_free(double x0, double t, const MCConfig& cfg, std::uint64_t path) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "stablemc", "need t > 0");
  return run(x0, t, cfg, path).z;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

std::vector<PathEstimate> estimate_Ptf(const std::vector<Fn>& fs, double x0, double t, const MCConfig& cfg) {
  cfg.validate();
  const std::size_t n = static_cast<std::size_t>(cfg.n_paths);
  std::vector<std::vector<double>> vals(fs.size(), std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double x = simulate_reflected(x0, t, cfg, i);
    for (std::size_t k = 0; k < fs.size(); ++k) vals[k][i] = fs[k](x);
  }
  std::vector<PathEstimate> out(fs.size());
  for (std::size_t k = 0; k < fs.size(); ++k) {
    auto& v = vals[k];
    const double mean = pairwise_sum(v.data(), n) / n;
    for (double& x : v) x = (x - mean) * (x - mean);
    const double var = n > 1 ? pairwise_sum(v.data(), n) / (n - 1) : 0.0;
    out[k] = {mean, std::sqrt(var / n), cfg.n_paths};
  }
  return out;
}

PathEstimate estimate_Ptf(const Fn& f, double x0, double t, const MCConfig& cfg) {
  return estimate_Ptf(std::vector<Fn>{f}, x0, t, cfg)[0];
}

}  // namespace stablespec::stablemc
