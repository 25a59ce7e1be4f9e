// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "stablespec/error.hpp"
#include "stablespec/mellin/symbol.hpp"
#include "stablespec/numerics/quadrature.hpp"
#include "stablespec/numerics/summation.hpp"
#include "stablespec/numerics/vertical_line.hpp"
#include "stablespec/specfun/specfun.hpp"

namespace stablespec::specfun {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();
// Evaluate Bessel functions in double; the default long double promotion
// spends most of its time in extended-precision argument reduction.
using kDoublePolicy = boost::math::policies::policy<boost::math::policies::promote_double<false>>;

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << what << " needs x >= 0, got " << x;
    throw Error(ErrorCode::InvalidArgument, "specfun", os.str());
  }
}

}  // namespace

double besselJ_alpha_series(double x, const AlphaParams& p) {
  require_nonnegative(x, "besselJ_alpha");
  const double a = p.alpha;
  if (x == 0.0) return a / p.gamma_inv_alpha;
  const double z = std::pow(x, a);
  const double lz = a * std::log(x);
  numerics::CompensatedSum<double> sum;
  for (int n = 0; n < 400; ++n) {
    const double mag = std::exp(n * lz - std::lgamma(n + 1.0) - std::lgamma(n + 1.0 / a));
    sum.add(n % 2 == 0 ? mag : -mag);
    if (n > z && mag < 1e-18 * std::abs(sum.value())) break;
  }
  return a * sum.value();
}

double besselJ_alpha(double x, const AlphaParams& p) {
  require_nonnegative(x, "besselJ_alpha");
  if (x <= 1.0) return besselJ_alpha_series(x, p);
  const double a = p.alpha;
  return a * std::pow(x, 0.5 * (a - 1.0)) * boost::math::cyl_bessel_j(1.0 / a - 1.0, 2.0 * std::pow(x, 0.5 * a), kDoublePolicy{});
}

double hatJ(double x, const AlphaParams& p, int k) {
  require_nonnegative(x, "hatJ");
  if (k < 0) throw Error(ErrorCode::OrderUnsupported, "specfun", "negative derivative order");
  // Im[(-omega)^k omega e^{-x omega}], omega = e^{i pi_a}
  const std::complex<double> omega(p.cos_pa, p.sin_pa);
  std::complex<double> v = omega * std::exp(-x * omega);
  for (int j = 0; j < k; ++j) v *= -omega;
  return p.gamma_inv_alpha / kPi * v.imag();
}

double stretched_exp(double x, double tau, double exponent) { return std::exp(-tau * std::pow(x, exponent)); }

namespace {

// Series for g_alpha; max_term receives the largest summand magnitude.
double g_series_impl(double x, const AlphaParams& p, double* max_term_out) {
  const double a = p.alpha;
  const double lz = a * std::log(x);
  const double lg = std::lgamma(1.0 / a);
  numerics::CompensatedSum<double> sum;
  double max_term = 0.0;
  for (int n = 0; n < 2000; ++n) {
    const double mag =
        std::exp(lg + std::lgamma(a * n + 1.0) - std::lgamma(n + 1.0 / a) - 2.0 * std::lgamma(n + 1.0) + n * lz);
    sum.add(n % 2 == 0 ? mag : -mag);
    max_term = std::max(max_term, mag);
    if (n > 2 && mag < 1e-18 * std::abs(sum.value()) && mag < max_term) break;
  }
  *max_term_out = max_term;
  return sum.value();
}

}  // namespace

double g_alpha_series(double x, const AlphaParams& p) {
  require_nonnegative(x, "g_alpha");
  if (x == 0.0) return 1.0;
  double max_term = 0.0;
  const double v = g_series_impl(x, p, &max_term);
  if (max_term > 1e15 * std::abs(v)) {
    std::ostringstream os;
    os << "g_alpha series at x=" << x << " exceeds the double-precision stability range";
    throw Error(ErrorCode::CancellationOverflow, "specfun", os.str());
  }
  return v;
}

double g_alpha(double x, const AlphaParams& p) {
  require_nonnegative(x, "g_alpha");
  if (x == 0.0) return 1.0;
  const double a = p.alpha;
  if (std::pow(x, a) <= 8.0) {
    // Keep the series while rounding stays near 1e-14 absolute.
    double max_term = 0.0;
    const double v = g_series_impl(x, p, &max_term);
    if (max_term < 30.0) return v;
  }
  // Mellin transform Gamma(1/a) Gamma(s/a) Gamma(1-s) / (a Gamma(1-s/a) Gamma((1-s)/a)), 0 < Re s < 1.
  const mellin::GammaRatio ratio(p.gamma_inv_alpha / a,
                                 {{1.0 / a, 0.0, 1}, {-1.0, 1.0, 1}, {-1.0 / a, 1.0, -1}, {-1.0 / a, 1.0 / a, -1}});
  const auto sym = mellin::MellinSymbol::from_ratio("M_g", ratio, 0.0, 1.0);
  return numerics::integrate_vertical_line(sym, x, 0.5, 1e-15).real.value;
}

namespace {

using mpf = boost::multiprecision::cpp_bin_float_100;

// 1/Gamma(alpha k + 1), k = 0..kPolyMax, in 100-digit arithmetic. The
// alternating sum defining P_n loses up to ~30 digits at n = 600, x = 1
// and more for larger x.
constexpr int kPolyMax = 800;

std::shared_ptr<const std::vector<mpf>> poly_table(double alpha) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const std::vector<mpf>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(alpha);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<std::vector<mpf>>(kPolyMax + 1);
  const mpf a(alpha);
  for (int k = 0; k <= kPolyMax; ++k) (*t)[k] = 1 / boost::math::tgamma(a * k + 1);
  cache.emplace(alpha, t);
  return t;
}

}  // namespace

double poly_P(int n, double x, const AlphaParams& p) {
  if (n < 0 || n > kPolyMax) {
    std::ostringstream os;
    os << "poly_P needs 0 <= n <= " << kPolyMax << ", got " << n;
    throw Error(ErrorCode::InvalidArgument, "specfun", os.str());
  }
  require_nonnegative(x, "poly_P");
  if (x == 0.0 || n == 0) return 1.0 / p.gamma_one_plus;
  const auto g = poly_table(p.alpha);
  const mpf xm(x);
  mpf sum = 0, ff = 1, xp = 1, max_term = 0;
  for (int k = 0; k <= n; ++k) {
    const mpf t = ff * xp * (*g)[k];
    if (t > max_term) max_term = t;
    if (k % 2 == 0)
      sum += t;
    else
      sum -= t;
    ff *= (n - k);
    xp *= xm;
  }
  if (max_term > abs(sum) * mpf("1e85")) {
    std::ostringstream os;
    os << "poly_P(" << n << ", " << x << ") cancels beyond 100-digit arithmetic";
    throw Error(ErrorCode::CancellationOverflow, "specfun", os.str());
  }
  return static_cast<double>(sum) / p.gamma_one_plus;
}

double func_V_series(int n, double y, const AlphaParams& p) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "specfun", "func_V needs n >= 0");
  require_nonnegative(y, "func_V");
  const double a = p.alpha;
  const double pre = p.gamma_inv_alpha / (a * kPi) * std::exp(-std::lgamma(n + 1.0));
  numerics::CompensatedSum<double> sum;
  const double ly = (y > 0.0) ? std::log(y) : 0.0;
  for (int m = 0; m < 4000; ++m) {
    if (y == 0.0 && m > 0) break;
    const double mag = std::exp(std::lgamma(n + (m + 1.0) / a) - std::lgamma(m + 1.0) + (m > 0 ? m * ly : 0.0));
    const double term = (m % 2 == 0 ? 1.0 : -1.0) * std::sin((m + 1.0) * p.pi_alpha) * mag;
    sum.add(term);
    if (m > 10 && (m + 1.0) / a > n + 2.0 && mag < 1e-18 * std::abs(sum.value())) break;
  }
  return pre * sum.value();
}

double func_V(int n, double y, const AlphaParams& p, double rel_tol) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "specfun", "func_V needs n >= 0");
  require_nonnegative(y, "func_V");
  const double a = p.alpha;
  const double c = y * std::abs(p.cos_pa);
  const double lnf = std::lgamma(n + 1.0);
  // log envelope of the integrand without the 1/n! factor
  auto log_env = [&](double q) { return a * n * std::log(q) - std::pow(q, a) + c * q; };
  const double qpk = std::max(std::pow(static_cast<double>(n) + 1.0, 1.0 / a), 1.0);
  double peak = -1e300;
  for (double q = qpk / 64.0; q < 64.0 * qpk; q *= 1.1) peak = std::max(peak, log_env(q));
  double q_hi = qpk;
  while (log_env(q_hi) > peak - 45.0) q_hi *= 1.25;
  std::vector<double> bp{0.0};
  // Oscillation period of hatJ(q y) in q.
  const double period = (y > 0.0) ? 2.0 * kPi / (y * p.sin_pa) : 1e300;
  const double step = std::min(0.25 * qpk, 0.5 * period);
  for (double q = step; q < q_hi; q += step) bp.push_back(q);
  bp.push_back(q_hi);
  auto f = [&](double q) {
    if (q <= 0.0) return (n == 0) ? hatJ(0.0, p) : 0.0;
    return std::exp(a * n * std::log(q) - std::pow(q, a) - lnf) * hatJ(q * y, p);
  };
  numerics::AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = 1e-300;
  opt.max_evals = 400000;
  // Past the peak the integrand cancels; the rounding floor is accepted there.
  opt.throw_on_failure = false;
  return numerics::gauss_kronrod(f, bp, opt).value;
}

}  // namespace stablespec::specfun
