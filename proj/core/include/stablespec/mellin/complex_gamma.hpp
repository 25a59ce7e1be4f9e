// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

namespace stablespec::mellin {

// log Gamma(z) for complex z, correct modulo 2*pi*i. Stirling series after
// an upward shift to |z| >= 15; reflection for Re z < 1/2 with a
// log sin(pi z) that stays finite for large |Im z|.
std::complex<double> lgamma(std::complex<double> z);

inline std::complex<double> tgamma(std::complex<double> z) { return std::exp(lgamma(z)); }

// log sin(pi z), overflow-free for large |Im z|.
std::complex<double> log_sin_pi(std::complex<double> z);

// 1/Gamma(x) for real x; exactly 0 at non-positive integers.
double rgamma(double x);

}  // namespace stablespec::mellin
