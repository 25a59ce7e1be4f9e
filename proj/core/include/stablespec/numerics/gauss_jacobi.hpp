// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace stablespec::numerics {

// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1-t)^a (1+t)^b,
// a, b > -1, via Golub-Welsch.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_jacobi(int n, double a, double b);

// The same rule mapped to [0, 1] with weight (1-u)^a u^b.
GaussRule gauss_jacobi_unit(int n, double a, double b);

}  // namespace stablespec::numerics
