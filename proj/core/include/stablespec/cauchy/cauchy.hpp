// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "stablespec/numerics/grid.hpp"
#include "stablespec/operators/operators.hpp"
#include "stablespec/specfun/alpha.hpp"

namespace stablespec::cauchy {

// e_class evaluates the co-transform of an E_alpha_kappa function; dual
// solves for the dual semigroup, u = hatH e_t calH g.
enum class Route { automatic, range_lambda, e_class, weighted, dual };

std::string_view to_string(Route r);
Route route_from_string(std::string_view s);

struct AdmissibilityReport {
  Route route_chosen = Route::automatic;
  double T_alpha = 0.0;
  std::string reason;
};

// (eta/(alpha-1)) (2(alpha-1)/(alpha eta) cos((alpha+1) pi/alpha))^alpha when
// kappa(alpha-1) = alpha, zero otherwise.
double T_alpha(double kappa, double eta, const specfun::AlphaParams& p);

// Route for a declared class. Throws UnclassifiedFunction for L2_plain (unless
// the dual route is requested) and AdmissibilityViolation when `requested`
// does not fit the class.
AdmissibilityReport admissibility(const operators::FunctionClass& cls, const specfun::AlphaParams& p,
                                  Route requested = Route::automatic);

struct SolveRequest {
  numerics::GridFunction f;
  operators::FunctionClass cls;
  std::vector<double> times;
  numerics::Grid output_grid = numerics::Grid::default_grid();
  Route route = Route::automatic;
  double tol = 1e-8;
};

struct SolveResult {
  AdmissibilityReport report;
  std::vector<numerics::GridFunction> solutions;  // one per time
  long spectral_nodes = 0;
};

// P_t f on the output grid for every t (P^_t g for the dual route).
// Throws InvalidArgument (times not increasing), AdmissibilityViolation
// (t <= T_alpha) and NonConvergence.
SolveResult solve(const SolveRequest& req, const specfun::AlphaParams& p);

// int_0^inf P_t(x, y) f(y) dy by quadrature of the heat kernel.
double kernel_quadrature(const numerics::GridFunction& f, double t, double x, const specfun::AlphaParams& p,
                         double tol = 1e-10);

// Lambda Q_t g (x) with Q_t from the Bessel-type kernel; equals P_t Lambda g.
double solve_intertwined(const numerics::GridFunction& g, double t, double x, const specfun::AlphaParams& p,
                         double tol = 1e-10);

// sum_n (-1)^n x^{beta n} / (M_Lambda(beta n + 1) n!), the preimage of
// e^{-x^beta} under Lambda. Throws CancellationOverflow outside the series'
// double-precision range and InvalidArgument for beta outside
// (0, min(alpha/(2-alpha), alpha/(alpha-1))).
double b_beta(double x, double beta, const specfun::AlphaParams& p);

// B_beta on a grid: the series while it is accurate, Mellin inversion beyond.
numerics::GridFunction b_beta_function(const numerics::Grid& grid, double beta, const specfun::AlphaParams& p);

using Fn = std::function<double(double)>;

// Caputo derivative int_0^x f''(y) (x-y)^{1-alpha} dy / Gamma(2-alpha) from
// the second derivative. head_exponent h declares f''(y) ~ y^h near 0
// (h > -1) and is absorbed into the Gauss-Jacobi weight.
double caputo_derivative(const Fn& f2, double x, const specfun::AlphaParams& p, double head_exponent = 0.0);

// Right Riemann-Liouville derivative (d/dx)^2 int_x^inf f(y) (y-x)^{1-alpha} dy / Gamma(2-alpha),
// differentiated under the integral. f2 is f''; |f(y)| <= C e^{-decay_rate y}.
// Throws TailTooHeavy for decay_rate <= 0 or when f2 does not decay.
double rl_right_derivative(const Fn& f2, double x, const specfun::AlphaParams& p, double decay_rate);

}  // namespace stablespec::cauchy
