// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "stablespec/error.hpp"

namespace stablespec::numerics {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel eval_panel(const ScalarFn& f, double a, double b) {
  double err = 0.0;
  double l1 = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &err, &l1);
  // Boost reports the error of the rule mapped to [-1, 1]; rescale it.
  err *= 0.5 * (b - a);
  // Errors below the roundoff floor cannot be reduced by bisection.
  const double floor = 50.0 * kEps * l1;
  return {a, b, v, std::max(err, floor), l1};
}

}  // namespace

QuadratureResult gauss_kronrod(const ScalarFn& f, const std::vector<double>& bp, const AdaptiveOptions& opt) {
  QuadratureResult res;
  if (bp.size() < 2) return res;
  std::priority_queue<Panel> heap;
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    if (!(bp[i + 1] > bp[i])) continue;
    Panel p = eval_panel(f, bp[i], bp[i + 1]);
    res.evaluations += 21;
    value += p.value;
    error += p.error;
    l1 += p.l1;
    heap.push(p);
  }
  auto target = [&] { return std::max({opt.abs_tol, opt.rel_tol * std::abs(value), 50.0 * kEps * l1}); };
  while (error > target() && res.evaluations + 42 <= opt.max_evals && !heap.empty()) {
    Panel p = heap.top();
    if (p.error <= 50.0 * kEps * p.l1 * 1.0000001) break;  // everything left is roundoff
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      heap.push(p);
      break;
    }
    Panel l = eval_panel(f, p.a, m);
    Panel r = eval_panel(f, m, p.b);
    res.evaluations += 42;
    value += l.value + r.value - p.value;
    error += l.error + r.error - p.error;
    l1 += l.l1 + r.l1 - p.l1;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to avoid drift from the incremental updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  res.value = value;
  res.abs_error_estimate = error;
  if (opt.throw_on_failure && error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) &&
      error > 100.0 * kEps * l1) {
    std::ostringstream os;
    os << "adaptive Gauss-Kronrod reached " << res.evaluations << " evaluations with error " << error
       << " (tolerance " << std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) << ")";
    throw Error(ErrorCode::NonConvergence, "numerics", os.str());
  }
  return res;
}

QuadratureResult gauss_kronrod(const ScalarFn& f, double a, double b, const AdaptiveOptions& opt) {
  return gauss_kronrod(f, std::vector<double>{a, b}, opt);
}

QuadratureResult integrate_semiinfinite(const ScalarFn& f, const DecayHint& tail, double tol, long max_evals) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "numerics", "tolerance must be positive");
  if (tail.kind == DecayKind::power && !(tail.rate > 1.0))
    throw Error(ErrorCode::InvalidTail, "numerics", "power tail with rate <= 1 is not integrable");
  if (tail.kind == DecayKind::stretched_exponential && !(tail.rate > 0.0 && tail.shape > 0.0))
    throw Error(ErrorCode::InvalidTail, "numerics", "stretched-exponential tail needs rate, shape > 0");

  auto probe = [&](double x) {
    return std::max({std::abs(f(x)), std::abs(f(0.93 * x)), std::abs(f(1.07 * x))});
  };
  auto envelope = [&](double x) {
    const double fx = probe(x);
    if (tail.kind == DecayKind::power) return fx * x / (tail.rate - 1.0);
    // int_X^inf e^{-c x^b} dx <= e^{-c X^b} X^{1-b} / (c b) for X large enough
    return fx * std::pow(x, 1.0 - tail.shape) / (tail.rate * tail.shape) + fx * x * 1e-3;
  };

  double x_star = 1.0;
  double env = envelope(x_star);
  double prev = std::numeric_limits<double>::infinity();
  int growth = 0;
  while (!(env < 0.1 * tol)) {
    x_star *= 2.0;
    if (x_star > 1e15 || !std::isfinite(env))
      throw Error(ErrorCode::InvalidTail, "numerics", "integrand not decaying by the probe limit");
    prev = env;
    env = envelope(x_star);
    growth = (env > prev) ? growth + 1 : 0;
    if (growth > 12) throw Error(ErrorCode::InvalidTail, "numerics", "integrand grows past the probe points");
  }

  std::vector<double> bp{0.0};
  for (double b = std::min(1.0 / 16.0, x_star); b < x_star; b *= 2.0) bp.push_back(b);
  bp.push_back(x_star);
  AdaptiveOptions opt;
  opt.abs_tol = 0.8 * tol;
  opt.max_evals = max_evals;
  opt.throw_on_failure = false;
  QuadratureResult r = gauss_kronrod(f, bp, opt);
  r.abs_error_estimate += env;
  if (r.abs_error_estimate > tol) {
    std::ostringstream os;
    os << "semi-infinite integral error " << r.abs_error_estimate << " exceeds " << tol;
    throw Error(ErrorCode::NonConvergence, "numerics", os.str());
  }
  return r;
}

double wynn_epsilon(const std::vector<double>& s, double* error_estimate) {
  const std::size_t n = s.size();
  if (n == 0) return 0.0;
  if (n < 3) {
    if (error_estimate) *error_estimate = n == 2 ? std::abs(s[1] - s[0]) : std::abs(s[0]);
    return s.back();
  }
  // e[k][j]: column k of the epsilon table; even columns are estimates.
  std::vector<double> prev(n + 1, 0.0);
  std::vector<double> cur(s.begin(), s.end());
  double best = s.back();
  double best_err = std::abs(s[n - 1] - s[n - 2]);
  double last_even = s.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(cur.size() - 1);
    bool ok = true;
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const double d = cur[j + 1] - cur[j];
      if (d == 0.0 || !std::isfinite(d)) {
        ok = false;
        break;
      }
      next[j] = prev[j + 1] + 1.0 / d;
    }
    if (!ok || next.empty()) break;
    if (k % 2 == 0) {
      const double est = next.back();
      const double e = std::abs(est - last_even);
      if (std::isfinite(est) && e < best_err) {
        best = est;
        best_err = e;
      }
      last_even = est;
    }
    prev.assign(cur.begin(), cur.end());
    cur = std::move(next);
  }
  if (error_estimate) *error_estimate = best_err;
  return best;
}

QuadratureResult integrate_oscillatory(const ScalarFn& f, const std::function<double(int)>& breakpoint,
                                       double tol, int min_panels, int max_panels) {
  QuadratureResult res;
  std::vector<double> sums;
  double running = 0.0;
  double panel_err = 0.0;
  double last_extrap = std::numeric_limits<double>::quiet_NaN();
  AdaptiveOptions opt;
  opt.abs_tol = tol * 1e-2;
  opt.throw_on_failure = false;
  for (int j = 0; j < max_panels; ++j) {
    const double a = breakpoint(j);
    const double b = breakpoint(j + 1);
    QuadratureResult p = gauss_kronrod(f, a, b, opt);
    res.evaluations += p.evaluations;
    panel_err += p.abs_error_estimate;
    running += p.value;
    sums.push_back(running);
    if (j + 1 < min_panels) continue;
    std::vector<double> window(sums.end() - std::min<std::ptrdiff_t>(24, static_cast<std::ptrdiff_t>(sums.size())), sums.end());
    double werr = 0.0;
    const double extrap = wynn_epsilon(window, &werr);
    const double diff = std::abs(extrap - last_extrap);
    last_extrap = extrap;
    if (diff < tol && werr < tol) {
      res.value = extrap;
      res.abs_error_estimate = std::max(diff, werr) + panel_err;
      return res;
    }
  }
  res.value = std::isfinite(last_extrap) ? last_extrap : running;
  res.abs_error_estimate = std::numeric_limits<double>::infinity();
  return res;
}

}  // namespace stablespec::numerics
