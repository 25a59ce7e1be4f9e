// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/numerics/vertical_line.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "stablespec/error.hpp"

namespace stablespec::numerics {
namespace {

using mellin::cplx;
constexpr double kPi = boost::math::constants::pi<double>();
constexpr int kMaxLevels = 9;
constexpr double kMaxHeight = 6000.0;

}  // namespace

double truncation_height(const mellin::StirlingDecay& d, double log_scale, double tol) {
  // Smallest B >= 1 with rate*B - poly*log B >= log_scale - log(rate*tol) + 5.
  const double rhs = log_scale - std::log(d.exp_rate * tol) + 5.0;
  double b = std::max(1.0, rhs / d.exp_rate);
  for (int it = 0; it < 60; ++it) {
    const double next = std::max(1.0, (rhs + d.poly_exponent * std::log(b)) / d.exp_rate);
    if (std::abs(next - b) < 1e-6 * b) return next;
    b = next;
  }
  return b;
}

std::vector<LineResult> integrate_vertical_line(const mellin::MellinSymbol& symbol, const std::vector<double>& xs,
                                                double a, double tol) {
  if (!symbol.decay) throw Error(ErrorCode::NoDecayMetadata, "numerics", symbol.name + " has no decay metadata");
  if (!symbol.in_strip(a)) {
    std::ostringstream os;
    os << "abscissa " << a << " outside the strip of " << symbol.name;
    throw Error(ErrorCode::OutOfStrip, "numerics", os.str());
  }
  const mellin::StirlingDecay d = symbol.decay(a);
  if (!(d.exp_rate > 0.0))
    throw Error(ErrorCode::NoDecayMetadata, "numerics", symbol.name + " does not decay on the line");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "numerics", "tolerance must be positive");

  double max_log_scale = -1e300;
  double max_log_x = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "numerics", "Mellin inversion needs x > 0");
    max_log_scale = std::max(max_log_scale, d.log_constant - a * std::log(x));
    max_log_x = std::max(max_log_x, std::abs(std::log(x)));
  }
  double b_max = truncation_height(d, max_log_scale, tol);
  // The Stirling constant is asymptotic; confirm on the actual symbol.
  for (int it = 0; it < 40; ++it) {
    const double m = std::abs(symbol.eval(cplx(a, b_max))) + std::abs(symbol.eval(cplx(a, -b_max)));
    if (m * std::exp(max_log_scale - d.log_constant) / d.exp_rate < 1e-2 * tol) break;
    b_max *= 1.25;
  }
  if (b_max > kMaxHeight) {
    std::ostringstream os;
    os << symbol.name << ": truncation height " << b_max << " exceeds " << kMaxHeight;
    throw Error(ErrorCode::NonConvergence, "numerics", os.str());
  }

  const double h0 = std::min(0.5, kPi / (4.0 * (max_log_x + 1.0)));
  const std::size_t nx = xs.size();
  std::vector<double> logx(nx);
  for (std::size_t i = 0; i < nx; ++i) logx[i] = std::log(xs[i]);
  std::vector<cplx> sum(nx, 0.0), prev(nx, 0.0);
  std::vector<double> delta(nx, 0.0);
  std::vector<char> done(nx, 0);
  std::vector<double> xa(nx);
  for (std::size_t i = 0; i < nx; ++i) xa[i] = std::exp(-a * logx[i]);

  long evals = 0;
  double h = h0;
  int level = 0;
  auto accumulate = [&](double b, double weight) {
    const cplx m = symbol.eval(cplx(a, b));
    ++evals;
    if (m == cplx(0.0)) return;
    for (std::size_t i = 0; i < nx; ++i) {
      const double ph = -b * logx[i];
      sum[i] += weight * m * cplx(std::cos(ph), std::sin(ph));
    }
  };
  // Level 0: all multiples of h0.
  const long j0 = static_cast<long>(std::ceil(b_max / h0));
  for (long j = -j0; j <= j0; ++j) accumulate(j * h0, h0);
  for (level = 1; level <= kMaxLevels; ++level) {
    prev = sum;
    h = h0 / std::ldexp(1.0, level);
    for (auto& s : sum) s *= 0.5;
    const long jn = static_cast<long>(std::ceil(b_max / h));
    for (long j = -jn + ((jn % 2 == 0) ? 1 : 0); j <= jn; j += 2) accumulate(j * h, h);
    bool all = true;
    for (std::size_t i = 0; i < nx; ++i) {
      delta[i] = std::abs((sum[i] - prev[i]).real()) * xa[i] / (2 * kPi);
      if (delta[i] >= tol) all = false;
    }
    if (all && level >= 2) break;
  }

  std::vector<LineResult> out(nx);
  bool failed = false;
  for (std::size_t i = 0; i < nx; ++i) {
    const cplx v = sum[i] * xa[i] / (2 * kPi);
    out[i].real.value = v.real();
    out[i].real.abs_error_estimate = delta[i];
    out[i].real.evaluations = evals;
    out[i].imag = v.imag();
    out[i].b_max = b_max;
    out[i].step = h;
    if (!(delta[i] < tol)) failed = true;
  }
  if (failed) {
    std::ostringstream os;
    os << symbol.name << ": trapezoid did not converge after " << kMaxLevels << " halvings";
    throw Error(ErrorCode::NonConvergence, "numerics", os.str());
  }
  return out;
}

LineResult integrate_vertical_line(const mellin::MellinSymbol& symbol, double x, double a, double tol) {
  return integrate_vertical_line(symbol, std::vector<double>{x}, a, tol).front();
}

}  // namespace stablespec::numerics
