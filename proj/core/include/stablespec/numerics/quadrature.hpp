// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "stablespec/numerics/grid.hpp"

namespace stablespec::numerics {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

using ScalarFn = std::function<double(double)>;

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  long max_evals = 200000;
  bool throw_on_failure = true;
};

// Global adaptive Gauss-Kronrod (G10/K21) over the panels given by
// consecutive breakpoints. Bisects the panel with the largest error until
// the summed estimate is below max(abs_tol, rel_tol*|value|).
QuadratureResult gauss_kronrod(const ScalarFn& f, const std::vector<double>& breakpoints,
                               const AdaptiveOptions& opt = {});
QuadratureResult gauss_kronrod(const ScalarFn& f, double a, double b,
                               const AdaptiveOptions& opt = {});

// Integral over (0, inf): Gauss-Kronrod on [0, X*] with doubling panels and
// X* chosen so the hinted tail envelope integrates below tol/10. The tail
// envelope bound is added to the error estimate.
QuadratureResult integrate_semiinfinite(const ScalarFn& f, const DecayHint& tail, double tol,
                                        long max_evals = 400000);

// Sum of panel integrals over [b_0, b_1], [b_1, b_2], ... for slowly
// decaying oscillatory integrands (breakpoints at successive half periods),
// accelerated with Wynn's epsilon algorithm.
QuadratureResult integrate_oscillatory(const ScalarFn& f, const std::function<double(int)>& breakpoint,
                                       double tol, int min_panels = 8, int max_panels = 4000);

// Wynn epsilon extrapolation of a sequence of partial sums.
double wynn_epsilon(const std::vector<double>& partial_sums, double* error_estimate = nullptr);

}  // namespace stablespec::numerics
