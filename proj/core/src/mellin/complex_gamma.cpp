// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/mellin/complex_gamma.hpp"

#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace stablespec::mellin {
namespace {

using cd = std::complex<double>;
constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

cd stirling(cd w) {
  const cd inv = 1.0 / w;
  const cd inv2 = inv * inv;
  cd sum = 0.0;
  cd p = inv;
  for (double c : kStirling) {
    sum += c * p;
    p *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + kHalfLog2Pi + sum;
}

}  // namespace

cd log_sin_pi(cd z) {
  const double y = z.imag();
  if (std::abs(y) < 8.0) return std::log(std::sin(kPi * z));
  if (y < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
  const cd i(0.0, 1.0);
  const cd e2 = std::exp(2.0 * i * kPi * z);
  return -i * kPi * z + cd(-std::log(2.0), 0.5 * kPi) + std::log(1.0 - e2);
}

cd lgamma(cd z) {
  const double x = z.real();
  if (z.imag() == 0.0 && x <= 0.0 && x == std::floor(x))
    return {std::numeric_limits<double>::infinity(), 0.0};
  if (x < 0.5) return std::log(kPi) - log_sin_pi(z) - lgamma(1.0 - z);

  cd w = z;
  cd prod = 1.0;
  cd logprod = 0.0;
  int count = 0;
  while (std::abs(w) < 15.0) {
    prod *= w;
    w += 1.0;
    if (++count == 12) {
      logprod += std::log(prod);
      prod = 1.0;
      count = 0;
    }
  }
  if (count > 0) logprod += std::log(prod);
  return stirling(w) - logprod;
}

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 170.0) return std::exp(-boost::math::lgamma(x));
  return 1.0 / boost::math::tgamma(x);
}

}  // namespace stablespec::mellin
