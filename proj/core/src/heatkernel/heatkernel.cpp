// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/heatkernel/heatkernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "stablespec/error.hpp"
#include "stablespec/mellin/density.hpp"
#include "stablespec/numerics/quadrature.hpp"
#include "stablespec/specfun/specfun.hpp"

namespace stablespec::heatkernel {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr int kSeriesMax = 600;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, "heatkernel", what);
}

// The kernel integrand extends analytically to the sector 0 > arg q > pi/2 - pi/a.
// On the ray arg q = pi/2 - pi/a both e^{-q y omega} and the oscillating part
// of calJ(q x) have modulus one, so the real-axis growth e^{q y |cos pi_a|}
// and its cancellation disappear; e^{-q^a t} still decays there.
double ray_angle(const specfun::AlphaParams& p) { return 0.5 * kPi - p.pi_alpha; }

// Radius where rho^{pw} e^{-rho^a t cos(a theta)} has fallen below tol e^{-5}.
double truncation_radius(const KernelRequest& r, const specfun::AlphaParams& p) {
  const double a = p.alpha;
  const double decay = r.t * std::cos(a * ray_angle(p));
  const double pw = a * r.deriv.k + r.deriv.p + r.deriv.q;
  auto log_env = [&](double rho) { return pw * std::log(rho) - std::pow(rho, a) * decay; };
  const double target = std::log(r.tol) - 5.0;
  double lo = std::max(1.0, std::pow(pw / (a * decay), 1.0 / a));
  double hi = 2.0 * lo;
  while (log_env(hi) > target) hi *= 2.0;
  for (int it = 0; it < 80; ++it) {
    const double m = 0.5 * (lo + hi);
    if (log_env(m) > target)
      lo = m;
    else
      hi = m;
  }
  return hi;
}

}  // namespace

std::string_view to_string(Representation r) {
  switch (r) {
    case Representation::integral:
      return "integral";
    case Representation::series:
      return "series";
    case Representation::automatic:
      return "auto";
  }
  return "unknown";
}

void KernelRequest::validate() const {
  std::ostringstream os;
  if (!(t > 0.0) || !std::isfinite(t)) {
    os << "kernel needs t > 0, got " << t;
    invalid(os.str());
  }
  if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    os << "kernel needs x, y >= 0, got (" << x << ", " << y << ")";
    invalid(os.str());
  }
  if (deriv.k < 0 || deriv.p < 0 || deriv.q < 0 || deriv.k + deriv.p + deriv.q > 4) {
    os << "derivative orders (" << deriv.k << ", " << deriv.p << ", " << deriv.q << ") need to be >= 0 with sum <= 4";
    invalid(os.str());
  }
  if (!(tol > 0.0)) invalid("kernel tolerance must be positive");
}

KernelValue kernel_integral(const KernelRequest& r, const specfun::AlphaParams& p) {
  r.validate();
  if (r.deriv.p > 2) {
    std::ostringstream os;
    os << "x-derivative order " << r.deriv.p << " not supported (calJ derivatives up to 2)";
    throw Error(ErrorCode::OrderUnsupported, "heatkernel", os.str());
  }
  if (r.x == 0.0 && r.deriv.p == 2) invalid("second x-derivative of the kernel is singular at x = 0");

  using cplx = std::complex<double>;
  const double a = p.alpha;
  const double theta = ray_angle(p);
  const cplx dir = std::polar(1.0, theta);
  const cplx omega(p.cos_pa, p.sin_pa);
  const double pw = a * r.deriv.k + r.deriv.p + r.deriv.q;
  const double sign = (r.deriv.k % 2 == 0) ? 1.0 : -1.0;
  // (Gamma(1/a)/pi) (-omega)^m omega, so that hatJ^{(m)}(w) = Im[c e^{-w omega}] for real w.
  cplx c = p.gamma_inv_alpha / kPi * omega;
  for (int j = 0; j < r.deriv.q; ++j) c *= -omega;
  const double rho_end = truncation_radius(r, p);

  double l1 = 0.0;
  auto f = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    const cplx q = rho * dir;
    const cplx lq = std::log(rho) + cplx(0.0, theta);
    const cplx w = std::exp(pw * lq - std::exp(a * lq) * r.t);
    const cplx v = sign * w * specfun::calJ(q * r.x, p, r.deriv.p) * c * std::exp(-q * r.y * omega) * dir;
    l1 = std::max(l1, std::abs(v));
    return v.imag();
  };

  const double freq = std::max({r.x + r.y, a * std::pow(rho_end, a - 1.0) * r.t * std::abs(std::sin(a * theta)), 1.0});
  const double step = std::min(rho_end / 8.0, kPi / freq);
  std::vector<double> bp;
  for (double rho = 0.0; rho < rho_end; rho += step) bp.push_back(rho);
  bp.push_back(rho_end);

  numerics::AdaptiveOptions opt;
  opt.abs_tol = r.tol;
  opt.max_evals = 1000000;
  const auto res = numerics::gauss_kronrod(f, bp, opt);
  KernelValue v;
  v.value = res.value;
  v.rep_used = Representation::integral;
  v.terms_or_evals = res.evaluations;
  v.error_estimate = res.abs_error_estimate + 1e-16 * l1 * rho_end;
  return v;
}

KernelValue kernel_series(const KernelRequest& r, const specfun::AlphaParams& p, std::optional<int> N) {
  r.validate();
  if (r.deriv.k != 0 || r.deriv.p != 0 || r.deriv.q != 0)
    invalid("the series representation evaluates the kernel value only");
  if (N && (*N < 0 || *N > kSeriesMax)) {
    std::ostringstream os;
    os << "series truncation must lie in [0, " << kSeriesMax << "], got " << *N;
    invalid(os.str());
  }
  const double a = p.alpha;
  const double s = std::pow(1.0 + r.t, -1.0 / a);
  const double ys = r.y * s;
  const double xa = std::pow(r.x, a);
  const double lt = std::log1p(r.t);
  const double cbar = std::pow(a / (a - 1.0), 1.0 / a);
  const double rate = cbar * ys + r.x;
  // Term bound n^{3/2} e^{(cbar y' + x) n^{1/a} - n ln(1+t)}, up to a constant.
  auto log_env = [&](int n) {
    if (n == 0) return 0.0;
    return 1.5 * std::log(n) + rate * std::pow(n, 1.0 / a) - lt * n;
  };
  auto tail_sum = [&](int n0) {
    double sum = 0.0;
    for (int m = n0 + 1; m < 200000; ++m) {
      const double e = std::exp(log_env(m));
      sum += e;
      if (m > n0 + 10 && log_env(m) < log_env(m - 1) && e < 1e-6 * sum) break;
    }
    return sum;
  };

  KernelValue v;
  v.rep_used = Representation::series;
  double sum = 0.0;
  double comp = 0.0;
  double scale = 0.0;  // max |term| / envelope seen so far
  int n = 0;
  for (;; ++n) {
    const double term =
        std::pow(1.0 + r.t, -static_cast<double>(n)) * s * specfun::poly_P(n, xa, p) * specfun::func_V(n, ys, p);
    const double y = term - comp;
    const double tt = sum + y;
    comp = (tt - sum) - y;
    sum = tt;
    scale = std::max(scale, std::abs(term) * std::exp(-log_env(n)));
    if (N) {
      if (n == *N) break;
      continue;
    }
    const bool past_peak = n > 0 && log_env(n + 1) < log_env(n);
    if (past_peak && scale * tail_sum(n) < r.tol) break;
    if (n == kSeriesMax) {
      std::ostringstream os;
      os << "series envelope tail at t=" << r.t << ", x=" << r.x << ", y=" << r.y << " is still "
         << scale * tail_sum(n) << " after " << kSeriesMax << " terms";
      throw Error(ErrorCode::TruncationFailure, "heatkernel", os.str());
    }
  }
  v.value = sum;
  v.terms_or_evals = n + 1;
  v.error_estimate = scale * tail_sum(n);
  return v;
}

KernelValue kernel(const KernelRequest& r, const specfun::AlphaParams& p) {
  switch (r.rep) {
    case Representation::integral:
      return kernel_integral(r, p);
    case Representation::series:
      return kernel_series(r, p);
    case Representation::automatic:
      break;
  }
  const bool value_only = r.deriv.k == 0 && r.deriv.p == 0 && r.deriv.q == 0;
  if (value_only && r.t >= 1.0 && r.x <= 2.0 && r.y <= 2.0) return kernel_series(r, p);
  return kernel_integral(r, p);
}

double heat_kernel(double t, double x, double y, const specfun::AlphaParams& p) {
  KernelRequest r;
  r.t = t;
  r.x = x;
  r.y = y;
  r.rep = Representation::integral;
  return kernel_integral(r, p).value;
}

double dual_kernel(double t, double x, double y, const specfun::AlphaParams& p) { return heat_kernel(t, y, x, p); }

double bessel_kernel_Q(double t, double x, double y, const specfun::AlphaParams& p) {
  if (!(t > 0.0)) invalid("bessel_kernel_Q needs t > 0");
  if (!(x >= 0.0) || !(y > 0.0)) invalid("bessel_kernel_Q needs x >= 0 and y > 0");
  const double a = p.alpha;
  const double nu = 1.0 / a - 1.0;
  const double u = std::pow(x, a);
  const double v = std::pow(y, a);
  const double jac = a * std::pow(y, a - 1.0);
  // Squared Bessel process of dimension 2/alpha at time t/2, in (u, v).
  if (u == 0.0) return jac * std::exp(nu * std::log(v / t) - v / t - std::lgamma(nu + 1.0)) / t;
  const double z = 2.0 * std::sqrt(u * v) / t;
  double log_i;  // log I_nu(z)
  if (z < 600.0) {
    log_i = std::log(boost::math::cyl_bessel_i(nu, z));
  } else {
    const double m = 4.0 * nu * nu;
    const double s = 1.0 - (m - 1.0) / (8.0 * z) + (m - 1.0) * (m - 9.0) / (2.0 * std::pow(8.0 * z, 2)) -
                     (m - 1.0) * (m - 9.0) * (m - 25.0) / (6.0 * std::pow(8.0 * z, 3));
    log_i = z - 0.5 * std::log(2.0 * kPi * z) + std::log(s);
  }
  return jac * std::exp(0.5 * nu * std::log(v / u) - (u + v) / t + log_i) / t;
}

double entrance_density(double t, double y, const specfun::AlphaParams& p) {
  if (!(t > 0.0) || !(y >= 0.0)) invalid("entrance_density needs t > 0 and y >= 0");
  const double s = std::pow(t, -1.0 / p.alpha);
  return s * mellin::lambda_X(y * s, p);
}

}  // namespace stablespec::heatkernel
