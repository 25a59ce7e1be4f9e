// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "stablespec/error.hpp"
#include "stablespec/heatkernel/heatkernel.hpp"
#include "stablespec/numerics/quadrature.hpp"
#include "stablespec/specfun/specfun.hpp"

using namespace stablespec;
using namespace stablespec::heatkernel;
using specfun::AlphaParams;

namespace {

const AlphaParams kP(1.5);

double integrate_y(const std::function<double(double)>& f) {
  std::vector<double> bp;
  for (double y = 0.0; y <= 12.0; y += 0.5) bp.push_back(y);
  numerics::AdaptiveOptions o;
  o.abs_tol = 1e-10;
  return numerics::gauss_kronrod(f, bp, o).value;
}

KernelRequest request(double t, double x, double y, Derivative d = {}) {
  KernelRequest r;
  r.t = t;
  r.x = x;
  r.y = y;
  r.deriv = d;
  return r;
}

}  // namespace

// tests/oracles/kernel_oracle.py, 40-digit quadrature along the real axis.
TEST(KernelOracle, Values) {
  struct Row {
    double t, x, y, value;
  };
  const Row rows[] = {
      {0.5, 1.0, 0.5, 0.312506834808321721}, {1.0, 1.0, 1.0, 0.328810975403251413},
      {2.0, 0.5, 1.0, 0.288071989524711972}, {1.0, 0.0, 2.0, 0.248337361555867516},
      {0.5, 2.0, 1.0, 0.119811962189290025},
  };
  for (const auto& r : rows) {
    EXPECT_NEAR(kernel_integral(request(r.t, r.x, r.y), kP).value, r.value, 1e-10) << r.t << " " << r.x << " " << r.y;
    if (r.t >= 1.0)
      EXPECT_NEAR(kernel_series(request(r.t, r.x, r.y), kP).value, r.value, 1e-9) << r.t << " " << r.x << " " << r.y;
  }
}

TEST(Kernel, RepresentationsAgree) {
  for (double t : {0.5, 1.0, 2.0})
    for (double x : {0.5, 1.0})
      for (double y : {0.5, 1.0})
        EXPECT_NEAR(kernel_integral(request(t, x, y), kP).value, kernel_series(request(t, x, y), kP).value, 1e-9);
}

TEST(Kernel, UnitMass) {
  for (double t : {0.5, 2.0})
    for (double x : {0.0, 1.0}) EXPECT_NEAR(integrate_y([&](double y) { return heat_kernel(t, x, y, kP); }), 1.0, 1e-8);
}

TEST(Kernel, ChapmanKolmogorov) {
  const double ck = integrate_y([](double z) { return heat_kernel(0.5, 1.0, z, kP) * heat_kernel(0.5, z, 1.0, kP); });
  EXPECT_NEAR(ck / heat_kernel(1.0, 1.0, 1.0, kP), 1.0, 1e-8);
}

TEST(Kernel, Nonnegative) {
  for (double t : {0.3, 1.0})
    for (double x : {0.0, 1.0, 3.0})
      for (double y : {0.0, 0.2, 1.0, 4.0, 8.0}) EXPECT_GT(heat_kernel(t, x, y, kP), -1e-10) << t << x << y;
}

TEST(Kernel, EigenfunctionIsPreserved) {
  for (double q : {0.5, 1.0}) {
    const double v = integrate_y([&](double y) { return heat_kernel(0.5, 1.0, y, kP) * specfun::calJ(q * y, kP); });
    EXPECT_NEAR(v, std::exp(-std::pow(q, 1.5) * 0.5) * specfun::calJ(q, kP), 1e-8);
  }
}

TEST(Kernel, DerivativesMatchDifferences) {
  const double h = 1e-4;
  const double dt = kernel_integral(request(1.0, 1.0, 1.0, {1, 0, 0}), kP).value;
  EXPECT_NEAR(dt, (heat_kernel(1.0 + h, 1.0, 1.0, kP) - heat_kernel(1.0 - h, 1.0, 1.0, kP)) / (2 * h), 1e-7);
  const double dx = kernel_integral(request(1.0, 1.0, 1.0, {0, 1, 0}), kP).value;
  EXPECT_NEAR(dx, (heat_kernel(1.0, 1.0 + h, 1.0, kP) - heat_kernel(1.0, 1.0 - h, 1.0, kP)) / (2 * h), 1e-7);
  const double dy = kernel_integral(request(1.0, 1.0, 1.0, {0, 0, 1}), kP).value;
  EXPECT_NEAR(dy, (heat_kernel(1.0, 1.0, 1.0 + h, kP) - heat_kernel(1.0, 1.0, 1.0 - h, kP)) / (2 * h), 1e-7);
}

TEST(Kernel, NeumannConditionAtZero) {
  // The reflected process has P_t f'(0) = 0: d/dx P_t(x, y) vanishes at x = 0.
  for (double y : {0.5, 1.5}) EXPECT_NEAR(kernel_integral(request(1.0, 0.0, y, {0, 1, 0}), kP).value, 0.0, 1e-9);
}

TEST(Kernel, DualIsTranspose) {
  EXPECT_DOUBLE_EQ(dual_kernel(0.7, 0.3, 1.9, kP), heat_kernel(0.7, 1.9, 0.3, kP));
}

TEST(Kernel, NearGaussianLimit) {
  const double g = (1.0 / (2.0 * std::sqrt(M_PI))) * (1.0 + std::exp(-1.0));
  EXPECT_NEAR(heat_kernel(1.0, 1.0, 1.0, AlphaParams(1.99)) / g, 1.0, 2e-2);
}

TEST(Kernel, EntranceLawIsCompatible) {
  const double v = integrate_y([](double x) { return entrance_density(0.5, x, kP) * heat_kernel(0.5, x, 1.0, kP); });
  EXPECT_NEAR(v, entrance_density(1.0, 1.0, kP), 1e-8);
}

TEST(BesselKernel, MassAndEigenfunction) {
  const double m = integrate_y([](double y) { return y > 0 ? bessel_kernel_Q(1.0, 1.0, y, kP) : 0.0; });
  EXPECT_NEAR(m, 1.0, 1e-8);
  const double e = integrate_y(
      [](double y) { return y > 0 ? bessel_kernel_Q(1.0, 1.0, y, kP) * specfun::besselJ_alpha(y, kP) : 0.0; });
  EXPECT_NEAR(e, std::exp(-1.0) * specfun::besselJ_alpha(1.0, kP), 1e-8);
}

TEST(Kernel, AutomaticDispatch) {
  EXPECT_EQ(kernel(request(1.0, 1.0, 1.0), kP).rep_used, Representation::series);
  EXPECT_EQ(kernel(request(0.5, 1.0, 1.0), kP).rep_used, Representation::integral);
  EXPECT_EQ(kernel(request(1.0, 3.0, 1.0), kP).rep_used, Representation::integral);
}

TEST(Kernel, InvalidRequests) {
  EXPECT_THROW(request(-1.0, 1.0, 1.0).validate(), Error);
  EXPECT_THROW(request(1.0, -1.0, 1.0).validate(), Error);
  EXPECT_THROW(request(1.0, 1.0, 1.0, {2, 2, 1}).validate(), Error);
}
