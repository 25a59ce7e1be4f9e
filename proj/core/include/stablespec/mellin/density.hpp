// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stablespec/mellin/symbol.hpp"
#include "stablespec/numerics/grid.hpp"
#include "stablespec/specfun/alpha.hpp"

namespace stablespec::mellin {

struct Density {
  std::string name;
  numerics::GridFunction samples;
  double normalization_defect = 0.0;  // |1 - integral|
  double clip_mass = 0.0;             // mass removed by clipping inversion noise
};

// Inverse Mellin transform on the line Re s = a at every x (absolute tol).
std::vector<double> invert(const MellinSymbol& symbol, const std::vector<double>& xs, double a = 0.5,
                           double tol = 1e-13);

// Density of I_alpha, whose Mellin transform is M_Lambda. Convergent
// residue series near 0, vertical-line inversion elsewhere.
double lambda_alpha(double y, const specfun::AlphaParams& p);
std::vector<double> lambda_alpha(const std::vector<double>& ys, const specfun::AlphaParams& p);

// Entrance-law density at t = 1 (Mellin transform M_X).
double lambda_X(double y, const specfun::AlphaParams& p);
std::vector<double> lambda_X(const std::vector<double>& ys, const specfun::AlphaParams& p);

// alpha e^{-y^alpha} / Gamma(1/alpha)
double lambda_G(double y, const specfun::AlphaParams& p);

// name in {lambda_alpha, lambda_X, lambda_G}. Throws NormalizationDefect if
// the mass on the grid deviates from 1 by more than 1e-6 or inversion noise
// below -1e-9 appears.
Density density(std::string_view name, const specfun::AlphaParams& p, const numerics::Grid& grid);

}  // namespace stablespec::mellin
