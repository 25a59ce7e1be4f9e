// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace stablespec::specfun {

// Stability index 1 < alpha < 2 with the constants every routine needs.
struct AlphaParams {
  explicit AlphaParams(double alpha);

  double alpha;
  double pi_alpha;         // pi / alpha
  double cos_pa;           // cos(pi / alpha) < 0
  double sin_pa;           // sin(pi / alpha) > 0
  double gamma_inv_alpha;  // Gamma(1/alpha)
  double gamma_one_plus;   // Gamma(1 + 1/alpha)
};

}  // namespace stablespec::specfun
