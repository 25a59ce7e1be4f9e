// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stablespec/mellin/symbol.hpp"
#include "stablespec/specfun/alpha.hpp"

namespace stablespec::mellin {

// Gamma-ratio forms of the catalogued Mellin transforms.
GammaRatio ratio_Lambda(const specfun::AlphaParams& p);  // density of I_alpha
GammaRatio ratio_g(const specfun::AlphaParams& p);       // g_alpha
GammaRatio ratio_X(const specfun::AlphaParams& p);       // entrance law at t = 1
GammaRatio ratio_calJ(const specfun::AlphaParams& p);    // eigenfunction
GammaRatio ratio_hatH(const specfun::AlphaParams& p);    // multiplier of the co-transform
GammaRatio ratio_J(const specfun::AlphaParams& p);       // Bessel-type kernel
GammaRatio ratio_G(const specfun::AlphaParams& p);       // G_alpha
// e^{-tau x^{alpha kappa}}
GammaRatio ratio_e(const specfun::AlphaParams& p, double kappa, double tau);
// B_beta, the preimage of e^{-x^beta}
GammaRatio ratio_B(const specfun::AlphaParams& p, double beta);

// Names: Lambda, g, X, calJ, hatH, J, G, e (uses kappa, tau), B (uses kappa as beta).
MellinSymbol make_symbol(std::string_view name, const specfun::AlphaParams& p, double kappa = 1.0,
                         double tau = 1.0);
std::vector<std::string> symbol_names();

// Evaluate a catalogued symbol; throws OutOfStrip outside its strip.
cplx symbol(std::string_view name, const specfun::AlphaParams& p, cplx s);

// Gamma(alpha u + 1) / (Gamma(alpha u + 1 - alpha) (u - 1 + 1/alpha))
double phi_alpha(double u, const specfun::AlphaParams& p);

}  // namespace stablespec::mellin
