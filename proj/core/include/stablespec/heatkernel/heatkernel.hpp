// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

#include "stablespec/specfun/alpha.hpp"

namespace stablespec::heatkernel {

enum class Representation { integral, series, automatic };

std::string_view to_string(Representation r);

// Orders of d/dt (k), d/dx (p) and d/dy (q).
struct Derivative {
  int k = 0;
  int p = 0;
  int q = 0;
};

struct KernelRequest {
  double t = 1.0;
  double x = 0.0;
  double y = 0.0;
  Derivative deriv{};
  Representation rep = Representation::automatic;
  double tol = 1e-10;

  // t > 0, x, y >= 0, orders >= 0 with k + p + q <= 4. Throws InvalidArgument.
  void validate() const;
};

struct KernelValue {
  double value = 0.0;
  double error_estimate = 0.0;
  Representation rep_used = Representation::integral;
  long terms_or_evals = 0;
};

// (-1)^k int_0^inf q^{alpha k} e^{-q^alpha t} (d_q calJ)^{(p)}(x) (d_q hatJ)^{(q)}(y) dq
KernelValue kernel_integral(const KernelRequest& req, const specfun::AlphaParams& params);

// sum_n (1+t)^{-n-1/alpha} P_n(x^alpha) V_n(y (1+t)^{-1/alpha}); value only.
// With N unset the truncation follows the term envelope. Throws
// TruncationFailure when the envelope tail is not below tol by n = 600.
KernelValue kernel_series(const KernelRequest& req, const specfun::AlphaParams& params,
                          std::optional<int> N = std::nullopt);

// Dispatches on req.rep. automatic picks the series for t >= 1 and x, y <= 2
// (value only), the integral otherwise.
KernelValue kernel(const KernelRequest& req, const specfun::AlphaParams& params);

double heat_kernel(double t, double x, double y, const specfun::AlphaParams& params);

// Kernel of the dual semigroup: P^_t(x, y) = P_t(y, x).
double dual_kernel(double t, double x, double y, const specfun::AlphaParams& params);

// Transition density in y of the alpha-Bessel semigroup, with Q_t J(q .) = e^{-q^alpha t} J(q .).
double bessel_kernel_Q(double t, double x, double y, const specfun::AlphaParams& params);

// t^{-1/alpha} lambda_X(y t^{-1/alpha})
double entrance_density(double t, double y, const specfun::AlphaParams& params);

}  // namespace stablespec::heatkernel
