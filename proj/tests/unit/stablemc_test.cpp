// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "stablespec/error.hpp"
#include "stablespec/heatkernel/heatkernel.hpp"
#include "stablespec/mellin/density.hpp"
#include "stablespec/specfun/specfun.hpp"
#include "stablespec/stablemc/stablemc.hpp"

using namespace stablespec;
using namespace stablespec::stablemc;
using specfun::AlphaParams;

namespace {

// Asymptotic Kolmogorov distribution tail P(K > lambda).
double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) s += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(s, 0.0, 1.0);
}

double ks_pvalue(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = xs.size();
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - F, F - i / n});
  }
  const double sn = std::sqrt(n);
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

}  // namespace

TEST(StableMC, Reproducible) {
  MCConfig cfg;
  cfg.n_paths = 200;
  cfg.n_steps = 50;
  const auto a = estimate_Ptf([](double x) { return x; }, 1.0, 0.5, cfg);
  const auto b = estimate_Ptf([](double x) { return x; }, 1.0, 0.5, cfg);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(simulate_reflected(1.0, 0.5, cfg, 17), simulate_reflected(1.0, 0.5, cfg, 17));
  EXPECT_NE(simulate_reflected(1.0, 0.5, cfg, 17), simulate_reflected(1.0, 0.5, cfg, 18));
  cfg.seed += 1;
  EXPECT_NE(estimate_Ptf([](double x) { return x; }, 1.0, 0.5, cfg).mean, a.mean);
}

TEST(StableMC, ConfigHash) {
  MCConfig a;
  MCConfig b;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b.n_steps = 501;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(StableMC, BudgetAndArguments) {
  MCConfig cfg;
  cfg.n_paths = 1000000;
  cfg.n_steps = 10000;
  try {
    cfg.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  cfg.n_paths = 0;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_THROW(simulate_reflected(-1.0, 1.0, MCConfig{}, 0), Error);
}

TEST(StableMC, IncrementLaplaceTransform) {
  const AlphaParams p(1.5);
  auto rng = path_stream(7, 0);
  const int n = 400000;
  std::vector<double> a(n);
  std::vector<double> b(n);
  for (int i = 0; i < n; ++i) {
    const double z = sample_stable_increment(0.1, rng, p);
    a[i] = std::exp(0.5 * z);
    b[i] = std::exp(z);
  }
  for (auto [v, z] : {std::pair{&a, 0.5}, {&b, 1.0}}) {
    const double m = pairwise_sum(v->data(), n) / n;
    double s2 = 0.0;
    for (double x : *v) s2 += (x - m) * (x - m);
    const double se = std::sqrt(s2 / (n - 1) / n);
    EXPECT_LT(std::abs(m - std::exp(0.1 * std::pow(z, 1.5))), 4.0 * se) << z;
  }
}

TEST(StableMC, ReflectedPathsStayNonnegative) {
  MCConfig cfg;
  cfg.n_steps = 100;
  for (std::uint64_t i = 0; i < 500; ++i) EXPECT_GE(simulate_reflected(0.2, 1.0, cfg, i), 0.0);
}

TEST(StableMC, EntranceLawKolmogorovSmirnov) {
  // From 0 the reflected process at time 1 has the entrance density.
  const AlphaParams p(1.5);
  MCConfig cfg;
  cfg.n_steps = 4000;
  const int n = 2000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = simulate_reflected(0.0, 1.0, cfg, i);
  // Tabulated CDF by Simpson's rule on [0, 20].
  const double h = 0.005;
  std::vector<double> ys;
  for (double y = 0.0; y <= 20.0 + 1e-12; y += h) ys.push_back(y);
  std::vector<double> dens(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) dens[i] = heatkernel::entrance_density(1.0, ys[i], p);
  std::vector<double> cdf(ys.size(), 0.0);
  for (std::size_t i = 1; i < ys.size(); ++i) {
    const double mid = heatkernel::entrance_density(1.0, ys[i] - 0.5 * h, p);
    cdf[i] = cdf[i - 1] + h / 6.0 * (dens[i - 1] + 4.0 * mid + dens[i]);
  }
  EXPECT_NEAR(cdf.back(), 1.0, 1e-4);
  const auto F = [&](double y) {
    if (y >= ys.back()) return 1.0;
    const std::size_t i = static_cast<std::size_t>(y / h);
    const double w = (y - ys[i]) / h;
    return (1.0 - w) * cdf[i] + w * cdf[i + 1];
  };
  EXPECT_GT(ks_pvalue(xs, F), 1e-3);
}

TEST(StableMC, FreeSkeletonHasStableMarginal) {
  // E e^{z Z_1} = e^{z^alpha} for the unreflected sum of increments.
  const AlphaParams p(1.5);
  MCConfig cfg;
  cfg.n_steps = 10;
  const int n = 100000;
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = std::exp(0.5 * simulate_free(0.0, 1.0, cfg, i));
    s += e;
    s2 += e * e;
  }
  const double m = s / n;
  const double se = std::sqrt((s2 / n - m * m) / n);
  EXPECT_LT(std::abs(m - std::exp(std::pow(0.5, 1.5))), 4.0 * se);
}

TEST(StableMC, MomentFromZero) {
  // E_0 X_1^alpha = Gamma(alpha + 1). The skeleton minimum overshoots the
  // true one, so coarse step counts bias this low.
  const AlphaParams p(1.5);
  MCConfig cfg;
  cfg.n_paths = 10000;
  cfg.n_steps = 4000;
  const auto est = estimate_Ptf([](double x) { return std::pow(x, 1.5); }, 0.0, 1.0, cfg);
  EXPECT_LT(std::abs(est.mean - std::tgamma(2.5)), 3.5 * est.std_error) << est.mean << " +- " << est.std_error;
}

TEST(StableMC, EigenfunctionStatistic) {
  const AlphaParams p(1.5);
  MCConfig cfg;
  cfg.n_paths = 20000;
  cfg.n_steps = 1000;
  const auto est = estimate_Ptf([&](double x) { return specfun::calJ(x, p); }, 1.0, 0.5, cfg);
  EXPECT_LT(std::abs(est.mean - std::exp(-0.5) * specfun::calJ(1.0, p)), 3.5 * est.std_error);
}
