// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "stablespec/error.hpp"
#include "stablespec/numerics/summation.hpp"
#include "stablespec/specfun/specfun.hpp"

namespace stablespec::specfun {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();

void check_order(int k) {
  if (k < 0 || k > 2) {
    std::ostringstream os;
    os << "derivative order " << k << " not supported (0 <= k <= 2)";
    throw Error(ErrorCode::OrderUnsupported, "specfun", os.str());
  }
}

// Nodes r_j = e^{sigma_j} and weights h r_j K(r_j) of the trapezoid rule in
// sigma = ln r for int_0^inf e^{-r x} K(r) dr, where
// K(r) = sin(pi a) r^{a-1} / (pi (r^{2a} + 2 r^a cos(pi a) + 1)).
// K has its nearest poles at Im sigma = +-pi(1 - 1/a), which fixes h.
struct LaplaceTable {
  std::vector<double> r;
  std::vector<double> w;
};

std::shared_ptr<const LaplaceTable> laplace_table(double a) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const LaplaceTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(a);
  if (it != cache.end()) return it->second;

  const double d = kPi * (1.0 - 1.0 / a);
  const double h = std::min(0.25, 2.0 * kPi * d / 40.0);
  const double lo = -42.0 / a;
  const double hi = std::log(1500.0);
  const double s = std::sin(kPi * a) / kPi;
  const double c = std::cos(kPi * a);
  auto table = std::make_shared<LaplaceTable>();
  for (double sigma = lo; sigma <= hi; sigma += h) {
    const double r = std::exp(sigma);
    const double ra = std::pow(r, a);
    const double k = s * ra / (ra * ra + 2.0 * ra * c + 1.0);  // r K(r)
    table->r.push_back(r);
    table->w.push_back(h * k);
  }
  cache.emplace(a, table);
  return table;
}

// Same rule with half the step, for complex arguments whose rotation
// narrows the strip of analyticity of e^{-r z}.
std::shared_ptr<const LaplaceTable> laplace_table_fine(double a) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const LaplaceTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(a);
  if (it != cache.end()) return it->second;
  const auto coarse = laplace_table(a);
  auto table = std::make_shared<LaplaceTable>();
  for (std::size_t j = 0; j < coarse->r.size(); ++j) {
    const double r = coarse->r[j];
    for (double f : {1.0, 0.0}) {
      if (f == 0.0 && j + 1 == coarse->r.size()) break;
      const double rr = (f == 1.0) ? r : std::sqrt(r * coarse->r[j + 1]);
      const double ra = std::pow(rr, a);
      const double k = std::sin(kPi * a) / kPi * ra / (ra * ra + 2.0 * ra * std::cos(kPi * a) + 1.0);
      const double h = 0.5 * std::log(coarse->r[1] / coarse->r[0]);
      table->r.push_back(rr);
      table->w.push_back(h * k);
    }
  }
  cache.emplace(a, table);
  return table;
}

// (2/alpha) Re(omega^k e^{x omega}), omega = e^{i pi/alpha}
double residue_term(double x, const AlphaParams& p, int k) {
  const std::complex<double> omega(p.cos_pa, p.sin_pa);
  std::complex<double> v = std::exp(x * omega);
  for (int j = 0; j < k; ++j) v *= omega;
  return 2.0 / p.alpha * v.real();
}

}  // namespace

AsymptoticCoeffs AsymptoticCoeffs::make(const AlphaParams& p, int k, int n_max) {
  check_order(k);
  AsymptoticCoeffs c;
  c.k = k;
  for (int n = 0; n <= n_max; ++n) {
    const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
    c.coeffs.push_back(sign * std::tgamma(p.alpha * n + p.alpha + k) * std::sin(kPi * p.alpha * (n + 1)));
  }
  return c;
}

double calJ_series(double x, const AlphaParams& p, int k, int max_terms, bool kahan) {
  check_order(k);
  if (x < 0.0) throw Error(ErrorCode::InvalidArgument, "specfun", "calJ needs x >= 0");
  if (x == 0.0) {
    if (k == 0) return 1.0 / p.gamma_one_plus;
    if (k == 1) return 0.0;
    return -std::numeric_limits<double>::infinity();
  }
  const double a = p.alpha;
  const double lx = std::log(x);
  numerics::CompensatedSum<double> sum(kahan);
  double max_term = 0.0;
  for (int n = 0; n < max_terms; ++n) {
    const double arg = a * n + 1.0 - k;
    if (arg <= 0.0) continue;  // 1/Gamma vanishes at the non-positive integers reached here
    const double mag = std::exp((a * n - k) * lx - std::lgamma(arg));
    const double term = (n % 2 == 0 ? mag : -mag);
    sum.add(term);
    max_term = std::max(max_term, mag);
    if (a * n > x + 2.0 && mag < 1e-17 * std::abs(sum.value())) {
      const double v = sum.value();
      if (max_term > 1e15 * std::abs(v)) {
        std::ostringstream os;
        os << "calJ series at x=" << x << " lost all digits (max term " << max_term << ")";
        throw Error(ErrorCode::CancellationOverflow, "specfun", os.str());
      }
      return v / p.gamma_one_plus;
    }
  }
  std::ostringstream os;
  os << "calJ series at x=" << x << " did not converge in " << max_terms << " terms";
  throw Error(ErrorCode::CancellationOverflow, "specfun", os.str());
}

double calJ_laplace(double x, const AlphaParams& p, int k) {
  check_order(k);
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "specfun", "Laplace representation needs x > 0");
  const auto table = laplace_table(p.alpha);
  double sum = 0.0;
  for (std::size_t j = 0; j < table->r.size(); ++j) {
    const double r = table->r[j];
    const double e = x * r;
    if (e > 745.0) break;
    double v = table->w[j] * std::exp(-e);
    if (k >= 1) v *= -r;
    if (k == 2) v *= -r;
    sum += v;
  }
  return (residue_term(x, p, k) + sum) / p.gamma_one_plus;
}

double calJ_asymptotic_partial(double x, const AlphaParams& p, int k, int n_terms) {
  check_order(k);
  const double a = p.alpha;
  const double lx = std::log(x);
  double sum = 0.0;
  for (int n = 0; n <= n_terms; ++n) {
    const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
    const double mag = std::exp(std::lgamma(a * n + a + k) - (a * (n + 1) + k) * lx);
    sum += sign * mag * std::sin(kPi * a * (n + 1));
  }
  return sum / (kPi * p.gamma_one_plus);
}

double calJ_asymptotic(double x, const AlphaParams& p, int k) {
  check_order(k);
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "specfun", "asymptotic expansion needs x > 0");
  const double a = p.alpha;
  const double lx = std::log(x);
  numerics::CompensatedSum<double> sum;
  double prev_env = std::numeric_limits<double>::infinity();
  for (int n = 0; n < 2000; ++n) {
    // Envelope without the sine factor, which may vanish.
    const double env = std::exp(std::lgamma(a * n + a + k) - (a * (n + 1) + k) * lx);
    if (env > prev_env) break;  // optimal truncation
    prev_env = env;
    const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
    sum.add(sign * env * std::sin(kPi * a * (n + 1)));
    if (env < 1e-18 * std::abs(sum.value())) break;
  }
  return sum.value() / (kPi * p.gamma_one_plus) + residue_term(x, p, k) / p.gamma_one_plus;
}

double calJ(double x, const AlphaParams& p, int k, const SeriesPolicy& policy) {
  check_order(k);
  if (x < 0.0) throw Error(ErrorCode::InvalidArgument, "specfun", "calJ needs x >= 0");
  if (x <= policy.series_max_x) return calJ_series(x, p, k, policy.max_terms, policy.kahan);
  if (x <= policy.asymptotic_min_x) return calJ_laplace(x, p, k);
  return calJ_asymptotic(x, p, k);
}

std::complex<double> calJ(std::complex<double> z, const AlphaParams& p, int k) {
  using cplx = std::complex<double>;
  check_order(k);
  if (z.imag() == 0.0 && z.real() >= 0.0) return calJ(z.real(), p, k);
  if (!(z.real() > 0.0)) throw Error(ErrorCode::InvalidArgument, "specfun", "complex calJ needs Re z > 0");
  const double a = p.alpha;
  const double r = std::abs(z);
  const cplx lz = std::log(z);
  const cplx omega(p.cos_pa, p.sin_pa);
  // Both poles contribute separately once z leaves the real axis.
  auto residues = [&] {
    cplx e1 = std::exp(z * omega);
    cplx e2 = std::exp(z * std::conj(omega));
    for (int j = 0; j < k; ++j) {
      e1 *= omega;
      e2 *= std::conj(omega);
    }
    return (e1 + e2) / a;
  };
  if (r <= 3.0) {
    cplx sum = 0.0;
    for (int n = 0; n < 600; ++n) {
      const double arg = a * n + 1.0 - k;
      if (arg <= 0.0) continue;
      const cplx term = std::exp((a * n - k) * lz - std::lgamma(arg)) * (n % 2 == 0 ? 1.0 : -1.0);
      sum += term;
      if (a * n > r + 2.0 && std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / p.gamma_one_plus;
  }
  if (r <= 40.0) {
    const auto table = laplace_table_fine(a);
    cplx sum = 0.0;
    for (std::size_t j = 0; j < table->r.size(); ++j) {
      const double rj = table->r[j];
      if (rj * z.real() > 745.0) break;
      cplx v = table->w[j] * std::exp(-rj * z);
      if (k >= 1) v *= -rj;
      if (k == 2) v *= -rj;
      sum += v;
    }
    return (residues() + sum) / p.gamma_one_plus;
  }
  cplx sum = 0.0;
  double prev_env = std::numeric_limits<double>::infinity();
  for (int n = 0; n < 2000; ++n) {
    const double lg = std::lgamma(a * n + a + k);
    const double env = std::exp(lg - (a * (n + 1) + k) * std::log(r));
    if (env > prev_env) break;
    prev_env = env;
    const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::sin(kPi * a * (n + 1)) * std::exp(lg - (a * (n + 1) + k) * lz);
    if (env < 1e-18 * std::abs(sum)) break;
  }
  return sum / (kPi * p.gamma_one_plus) + residues() / p.gamma_one_plus;
}

}  // namespace stablespec::specfun
