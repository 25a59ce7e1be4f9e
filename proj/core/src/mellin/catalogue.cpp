// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/mellin/catalogue.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "stablespec/error.hpp"

namespace stablespec::mellin {

GammaRatio ratio_Lambda(const specfun::AlphaParams& p) {
  const double ia = 1.0 / p.alpha;
  return GammaRatio(1.0 / p.gamma_inv_alpha, {{ia, 1.0 - ia, 1}, {ia, 0.0, 1}, {1.0, 0.0, -1}});
}

GammaRatio ratio_g(const specfun::AlphaParams& p) { return ratio_B(p, p.alpha); }

GammaRatio ratio_B(const specfun::AlphaParams& p, double beta) {
  const double ia = 1.0 / p.alpha;
  const double ib = 1.0 / beta;
  return GammaRatio(p.gamma_inv_alpha / beta, {{ib, 0.0, 1}, {-1.0, 1.0, 1}, {-ia, 1.0, -1}, {-ia, ia, -1}});
}

GammaRatio ratio_X(const specfun::AlphaParams& p) {
  const double ia = 1.0 / p.alpha;
  return GammaRatio(1.0, {{1.0, 0.0, 1}, {ia, 1.0 - ia, -1}});
}

GammaRatio ratio_calJ(const specfun::AlphaParams& p) {
  const double ia = 1.0 / p.alpha;
  return GammaRatio(1.0 / p.gamma_inv_alpha, {{-ia, 1.0, 1}, {ia, 0.0, 1}, {-1.0, 1.0, -1}});
}

GammaRatio ratio_hatH(const specfun::AlphaParams& p) {
  const double ia = 1.0 / p.alpha;
  return GammaRatio(p.gamma_inv_alpha, {{1.0, 0.0, 1}, {-ia, ia, -1}, {ia, 1.0 - ia, -1}});
}

GammaRatio ratio_J(const specfun::AlphaParams& p) {
  const double ia = 1.0 / p.alpha;
  return GammaRatio(1.0, {{ia, 0.0, 1}, {-ia, ia, -1}});
}

GammaRatio ratio_G(const specfun::AlphaParams& p) {
  return GammaRatio(1.0 / p.gamma_inv_alpha, {{1.0 / p.alpha, 0.0, 1}});
}

GammaRatio ratio_e(const specfun::AlphaParams& p, double kappa, double tau) {
  if (!(kappa > 0.0 && tau > 0.0))
    throw Error(ErrorCode::InvalidArgument, "mellin", "stretched exponential needs kappa, tau > 0");
  const double r = p.alpha * kappa;
  return GammaRatio(1.0 / r, {{1.0 / r, 0.0, 1}}, std::log(tau) / r);
}

MellinSymbol make_symbol(std::string_view name, const specfun::AlphaParams& p, double kappa, double tau) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (name == "Lambda") return MellinSymbol::from_ratio("Lambda", ratio_Lambda(p), 0.0, inf);
  if (name == "g") return MellinSymbol::from_ratio("g", ratio_g(p), 0.0, 1.0);
  if (name == "X") return MellinSymbol::from_ratio("X", ratio_X(p), 0.0, inf);
  if (name == "calJ") return MellinSymbol::from_ratio("calJ", ratio_calJ(p), 0.0, p.alpha);
  if (name == "hatH") return MellinSymbol::from_ratio("hatH", ratio_hatH(p), 0.0, 1.0);
  if (name == "J") return MellinSymbol::from_ratio("J", ratio_J(p), 0.0, 1.0);
  if (name == "G") return MellinSymbol::from_ratio("G", ratio_G(p), 0.0, inf);
  if (name == "e") return MellinSymbol::from_ratio("e", ratio_e(p, kappa, tau), 0.0, inf);
  if (name == "B") return MellinSymbol::from_ratio("B", ratio_B(p, kappa), 0.0, 1.0);
  std::ostringstream os;
  os << "unknown Mellin symbol '" << name << "'";
  throw Error(ErrorCode::InvalidArgument, "mellin", os.str());
}

std::vector<std::string> symbol_names() { return {"Lambda", "g", "X", "calJ", "hatH", "J", "G", "e", "B"}; }

cplx symbol(std::string_view name, const specfun::AlphaParams& p, cplx s) { return make_symbol(name, p)(s); }

double phi_alpha(double u, const specfun::AlphaParams& p) {
  if (!(u > 0.0)) throw Error(ErrorCode::InvalidArgument, "mellin", "phi_alpha needs u > 0");
  const double a = p.alpha;
  // a u + 1 - a = a (u - 1 + 1/a), so the ratio equals a Gamma(a u + 1) / Gamma(a u + 2 - a).
  return a * std::exp(std::lgamma(a * u + 1.0) - std::lgamma(a * u + 2.0 - a));
}

}  // namespace stablespec::mellin
