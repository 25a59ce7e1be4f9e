// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "stablespec/specfun/alpha.hpp"

namespace stablespec::specfun {

// Regime switches for calJ. Below series_max_x the alternating power series
// is summed; between the two switches a Laplace-type integral
// representation is used; above asymptotic_min_x the large-x expansion with
// its exponentially small oscillating term.
struct SeriesPolicy {
  double series_max_x = 3.0;
  double asymptotic_min_x = 40.0;
  int max_terms = 600;
  bool kahan = true;
};

// a_{n,k} = (-1)^{n+k} Gamma(alpha n + alpha + k) sin(pi alpha (n+1)), n = 0..N
struct AsymptoticCoeffs {
  int k = 0;
  std::vector<double> coeffs;

  static AsymptoticCoeffs make(const AlphaParams& p, int k, int n_max);
};

// k-th derivative of the Mittag-Leffler type eigenfunction, k <= 2.
double calJ(double x, const AlphaParams& p, int k = 0, const SeriesPolicy& policy = {});

// The individual regimes, exposed for cross-checks.
double calJ_series(double x, const AlphaParams& p, int k = 0, int max_terms = 600, bool kahan = true);
double calJ_laplace(double x, const AlphaParams& p, int k = 0);
// Optimally truncated algebraic expansion plus the oscillating term.
double calJ_asymptotic(double x, const AlphaParams& p, int k = 0);
// Algebraic partial sum S_N over n = 0..N (no oscillating term).
double calJ_asymptotic_partial(double x, const AlphaParams& p, int k, int n_terms);

// k-th derivative of calJ continued to |arg z| < pi/2, with the same regime
// switches on |z|.
std::complex<double> calJ(std::complex<double> z, const AlphaParams& p, int k = 0);

// Bessel-type function alpha x^{(alpha-1)/2} J_{1/alpha-1}(2 x^{alpha/2}).
double besselJ_alpha(double x, const AlphaParams& p);
double besselJ_alpha_series(double x, const AlphaParams& p);

// Residual function (Gamma(1/alpha)/pi) sin(pi_a - x sin pi_a) e^{-x cos pi_a}
// and its k-th derivative.
double hatJ(double x, const AlphaParams& p, int k = 0);

// Preimage of e^{-x^alpha} under the intertwining operator.
double g_alpha(double x, const AlphaParams& p);
double g_alpha_series(double x, const AlphaParams& p);

// e^{-tau x^{exponent}}; e_{alpha,tau} is exponent = alpha.
double stretched_exp(double x, double tau, double exponent);

// (1/Gamma(1+1/alpha)) sum_k (-1)^k C(n,k) k!/Gamma(alpha k + 1) x^k
double poly_P(int n, double x, const AlphaParams& p);

// (1/n!) int_0^inf q^{alpha n} e^{-q^alpha} hatJ(q y) dq
double func_V(int n, double y, const AlphaParams& p, double rel_tol = 1e-12);
// Termwise series of the same quantity; cancels badly for large y or n.
double func_V_series(int n, double y, const AlphaParams& p);

}  // namespace stablespec::specfun
