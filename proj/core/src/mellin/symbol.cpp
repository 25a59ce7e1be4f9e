// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/mellin/symbol.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "stablespec/error.hpp"
#include "stablespec/mellin/complex_gamma.hpp"

namespace stablespec::mellin {

cplx GammaRatio::log_value(cplx s) const {
  cplx acc = -s * log_base_;
  for (const auto& f : factors_) acc += static_cast<double>(f.power) * lgamma(f.c * s + f.d);
  return acc;
}

cplx GammaRatio::operator()(cplx s) const {
  if (constant_ == 0.0) return 0.0;
  // Zeros of 1/Gamma at non-positive integers.
  for (const auto& f : factors_) {
    const cplx w = f.c * s + f.d;
    if (f.power < 0 && w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real())) return 0.0;
  }
  return constant_ * std::exp(log_value(s));
}

StirlingDecay GammaRatio::decay(double a) const {
  constexpr double kPi = boost::math::constants::pi<double>();
  StirlingDecay d;
  d.log_constant = std::log(std::abs(constant_)) - a * log_base_;
  for (const auto& f : factors_) {
    if (f.c == 0.0) {
      d.log_constant += f.power * std::lgamma(f.d);
      continue;
    }
    const double re = f.c * a + f.d;
    d.poly_exponent += f.power * (re - 0.5);
    d.exp_rate += f.power * 0.5 * kPi * std::abs(f.c);
    d.log_constant += f.power * ((re - 0.5) * std::log(std::abs(f.c)) + 0.91893853320467274178);
  }
  return d;
}

GammaRatio GammaRatio::reflected() const {
  std::vector<GammaFactor> fs;
  fs.reserve(factors_.size());
  for (const auto& f : factors_) fs.push_back({-f.c, f.c + f.d, f.power});
  // exp(-(1-s) L) = exp(-L) exp(s L)
  return GammaRatio(constant_ * std::exp(-log_base_), std::move(fs), -log_base_);
}

GammaRatio GammaRatio::operator*(const GammaRatio& o) const {
  std::vector<GammaFactor> fs = factors_;
  fs.insert(fs.end(), o.factors_.begin(), o.factors_.end());
  return GammaRatio(constant_ * o.constant_, std::move(fs), log_base_ + o.log_base_);
}

cplx MellinSymbol::operator()(cplx s) const {
  if (!in_strip(s.real())) {
    std::ostringstream os;
    os << name << " evaluated at Re s = " << s.real() << " outside (" << strip_lo << ", " << strip_hi << ")";
    throw Error(ErrorCode::OutOfStrip, "mellin", os.str());
  }
  return eval(s);
}

MellinSymbol MellinSymbol::from_ratio(std::string name, GammaRatio ratio, double lo, double hi) {
  MellinSymbol m;
  m.name = std::move(name);
  m.strip_lo = lo;
  m.strip_hi = hi;
  m.eval = [ratio](cplx s) { return ratio(s); };
  m.decay = [ratio](double a) { return ratio.decay(a); };
  return m;
}

}  // namespace stablespec::mellin
