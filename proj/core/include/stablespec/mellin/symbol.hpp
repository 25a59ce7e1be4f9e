// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stablespec::mellin {

using cplx = std::complex<double>;

// |M(a+ib)| ~ exp(log_constant) |b|^{poly_exponent} exp(-exp_rate |b|)
struct StirlingDecay {
  double poly_exponent = 0.0;
  double exp_rate = 0.0;
  double log_constant = 0.0;
};

// Gamma(c s + d)^power
struct GammaFactor {
  double c;
  double d;
  int power;
};

// constant * exp(-s log_base) * prod Gamma(c_j s + d_j)^{p_j}
class GammaRatio {
 public:
  GammaRatio() = default;
  GammaRatio(double constant, std::vector<GammaFactor> factors, double log_base = 0.0)
      : constant_(constant), log_base_(log_base), factors_(std::move(factors)) {}

  cplx operator()(cplx s) const;
  cplx log_value(cplx s) const;
  StirlingDecay decay(double a) const;

  // s -> 1 - s
  GammaRatio reflected() const;
  GammaRatio operator*(const GammaRatio& o) const;

  double constant() const noexcept { return constant_; }
  double log_base() const noexcept { return log_base_; }
  const std::vector<GammaFactor>& factors() const noexcept { return factors_; }

 private:
  double constant_ = 1.0;
  double log_base_ = 0.0;
  std::vector<GammaFactor> factors_;
};

struct MellinSymbol {
  std::string name;
  std::function<cplx(cplx)> eval;
  double strip_lo = -1e300;
  double strip_hi = 1e300;
  // Stirling decay on the line Re s = a; empty when unknown.
  std::function<StirlingDecay(double)> decay;

  // Throws OutOfStrip when Re s is outside (strip_lo, strip_hi).
  cplx operator()(cplx s) const;
  bool in_strip(double a) const noexcept { return a > strip_lo && a < strip_hi; }

  static MellinSymbol from_ratio(std::string name, GammaRatio ratio, double lo, double hi);
};

}  // namespace stablespec::mellin
