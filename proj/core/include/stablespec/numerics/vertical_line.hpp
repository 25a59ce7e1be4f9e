// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "stablespec/mellin/symbol.hpp"
#include "stablespec/numerics/quadrature.hpp"

namespace stablespec::numerics {

struct LineResult {
  QuadratureResult real;
  double imag = 0.0;  // consistency diagnostic; ~0 for conjugate-symmetric symbols
  double b_max = 0.0;
  double step = 0.0;
};

// (1/2pi) int_{-B}^{B} x^{-(a+ib)} M(a+ib) db by the trapezoid rule, halving
// h until successive results differ by less than tol. B solves
// rate*B - poly*log B >= log(C x^{-a} / (rate tol)) + 5.
LineResult integrate_vertical_line(const mellin::MellinSymbol& symbol, double x, double a, double tol);

// Same integral for many x sharing one set of symbol samples.
std::vector<LineResult> integrate_vertical_line(const mellin::MellinSymbol& symbol, const std::vector<double>& xs,
                                                double a, double tol);

double truncation_height(const mellin::StirlingDecay& d, double log_scale, double tol);

}  // namespace stablespec::numerics
