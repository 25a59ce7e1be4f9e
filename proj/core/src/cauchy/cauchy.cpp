// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/cauchy/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "stablespec/error.hpp"
#include "stablespec/heatkernel/heatkernel.hpp"
#include "stablespec/mellin/catalogue.hpp"
#include "stablespec/mellin/density.hpp"
#include "stablespec/numerics/gauss_jacobi.hpp"
#include "stablespec/numerics/quadrature.hpp"
#include "stablespec/numerics/summation.hpp"
#include "stablespec/specfun/specfun.hpp"

namespace stablespec::cauchy {
namespace {

using numerics::GridFunction;
using operators::FunctionClass;
using operators::OperatorKind;
using operators::OperatorSpec;

constexpr int kPanelNodes = 20;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidArgument, "cauchy", what); }
[[noreturn]] void inadmissible(const std::string& what) {
  throw Error(ErrorCode::AdmissibilityViolation, "cauchy", what);
}

std::string_view tag_name(FunctionClass::Tag t) {
  switch (t) {
    case FunctionClass::Tag::L2_plain:
      return "L2";
    case FunctionClass::Tag::E_alpha_kappa:
      return "E";
    case FunctionClass::Tag::WeightedL2:
      return "weighted";
    case FunctionClass::Tag::RangeLambda:
      return "range_lambda";
  }
  return "unknown";
}

// Panels of the spectral q-rule: geometric towards 0, then 0.25 up to q = 4
// and 0.5 beyond.
double next_edge(double q) {
  if (q == 0.0) return 1e-6;
  if (q < 0.25) return std::min(2.0 * q, 0.25);
  if (q < 4.0) return q + 0.25;
  return q + 0.5;
}

struct SpectralNodes {
  std::vector<double> q;
  std::vector<double> w;
  std::vector<double> phi;
};

double beta_max(const specfun::AlphaParams& p) {
  return std::min(p.alpha / (2.0 - p.alpha), p.alpha / (p.alpha - 1.0));
}

void check_beta(double beta, const specfun::AlphaParams& p) {
  if (!(beta > 0.0 && beta < beta_max(p))) {
    std::ostringstream os;
    os << "B_beta needs 0 < beta < " << beta_max(p) << ", got " << beta;
    invalid(os.str());
  }
}

struct BSeries {
  double value;
  double max_term;
};

// log of |x^{-beta n}| times the n-th term of the B_beta series.
std::vector<double> b_log_coeffs(double beta, const specfun::AlphaParams& p, int n_max) {
  const double a = p.alpha;
  const double lg = std::lgamma(1.0 / a);
  std::vector<double> c(n_max);
  for (int n = 0; n < n_max; ++n) {
    const double bn = beta * n;
    c[n] = lg + std::lgamma(bn + 1.0) - std::lgamma(bn / a + 1.0) - std::lgamma((bn + 1.0) / a) -
           std::lgamma(n + 1.0);
  }
  return c;
}

BSeries b_series(double x, double beta, const std::vector<double>& logc) {
  if (x == 0.0) return {1.0, 1.0};
  const double lx = beta * std::log(x);
  numerics::CompensatedSum<double> sum;
  double max_term = 0.0;
  for (std::size_t n = 0; n < logc.size(); ++n) {
    const double mag = std::exp(logc[n] + n * lx);
    sum.add(n % 2 == 0 ? mag : -mag);
    max_term = std::max(max_term, mag);
    if (!std::isfinite(max_term)) return {sum.value(), max_term};
    if (n > 2 && mag < 1e-18 * std::abs(sum.value()) && mag < max_term) return {sum.value(), max_term};
  }
  return {std::numeric_limits<double>::quiet_NaN(), max_term};
}

constexpr int kBTerms = 4000;

}  // namespace

std::string_view to_string(Route r) {
  switch (r) {
    case Route::automatic:
      return "auto";
    case Route::range_lambda:
      return "range_lambda";
    case Route::e_class:
      return "e_class";
    case Route::weighted:
      return "weighted";
    case Route::dual:
      return "dual";
  }
  return "unknown";
}

Route route_from_string(std::string_view s) {
  for (Route r : {Route::automatic, Route::range_lambda, Route::e_class, Route::weighted, Route::dual})
    if (s == to_string(r)) return r;
  invalid("unknown route '" + std::string(s) + "' (auto, range_lambda, e_class, weighted, dual)");
}

double T_alpha(double kappa, double eta, const specfun::AlphaParams& p) {
  const double a = p.alpha;
  if (std::abs(kappa * (a - 1.0) - a) > 1e-12 * a) return 0.0;
  const double c = std::cos((a + 1.0) * p.pi_alpha);
  return eta / (a - 1.0) * std::pow(2.0 * (a - 1.0) / (a * eta) * c, a);
}

AdmissibilityReport admissibility(const FunctionClass& cls, const specfun::AlphaParams& p, Route requested) {
  AdmissibilityReport rep;
  if (requested == Route::dual) {
    rep.route_chosen = Route::dual;
    rep.reason = "dual semigroup: calH g exists for every g in L2";
    return rep;
  }
  if (cls.tag == FunctionClass::Tag::L2_plain)
    throw Error(ErrorCode::UnclassifiedFunction, "cauchy",
                "initial data needs a declared class (range_lambda, E or weighted) for the co-transform");
  cls.validate(p);
  Route natural = Route::automatic;
  std::ostringstream why;
  switch (cls.tag) {
    case FunctionClass::Tag::RangeLambda:
      natural = Route::range_lambda;
      why << "f = Lambda g with g declared; hatH f = H_alpha g, T_alpha = 0";
      break;
    case FunctionClass::Tag::E_alpha_kappa:
      natural = Route::e_class;
      why << "E class (kappa=" << cls.kappa << ") lies in the co-transform domain, T_alpha = 0";
      break;
    case FunctionClass::Tag::WeightedL2:
      natural = Route::weighted;
      rep.T_alpha = T_alpha(cls.kappa, cls.eta, p);
      why << "weighted class (kappa=" << cls.kappa << ", eta=" << cls.eta << "), T_alpha = " << rep.T_alpha;
      break;
    case FunctionClass::Tag::L2_plain:
      break;
  }
  if (requested != Route::automatic && requested != natural) {
    std::ostringstream os;
    os << "route " << to_string(requested) << " does not apply to a " << tag_name(cls.tag) << " class";
    inadmissible(os.str());
  }
  rep.route_chosen = natural;
  rep.reason = why.str();
  return rep;
}

SolveResult solve(const SolveRequest& req, const specfun::AlphaParams& p) {
  if (req.times.empty()) invalid("solve needs at least one time");
  for (std::size_t i = 0; i < req.times.size(); ++i) {
    if (!(req.times[i] > 0.0) || !std::isfinite(req.times[i])) invalid("solve times must be positive");
    if (i > 0 && !(req.times[i] > req.times[i - 1])) invalid("solve times must be strictly increasing");
  }
  if (!(req.tol > 0.0)) invalid("solve tolerance must be positive");

  SolveResult out;
  out.report = admissibility(req.cls, p, req.route);
  const Route route = out.report.route_chosen;
  const double t_min = req.times.front();
  if (t_min <= out.report.T_alpha) {
    std::ostringstream os;
    os << "t=" << t_min << " is not above T_alpha=" << out.report.T_alpha << " for this weighted class";
    inadmissible(os.str());
  }

  const double a = p.alpha;
  const bool dual = route == Route::dual;
  const double growth = dual ? req.output_grid.back() * std::abs(p.cos_pa) : 0.0;
  OperatorSpec spec{dual ? OperatorKind::calH : OperatorKind::hat_calH, p, std::min(1e-10, 1e-2 * req.tol)};

  const auto rule = numerics::gauss_jacobi(kPanelNodes, 0.0, 0.0);
  SpectralNodes sn;
  const double q_cap = std::pow(700.0 / t_min, 1.0 / a) + 1.0;
  int quiet = 0;
  for (double lo = 0.0; quiet < 2;) {
    const double hi = next_edge(lo);
    if (lo > q_cap) {
      std::ostringstream os;
      os << "spectral integrand did not decay below tolerance by q=" << lo << " at t=" << t_min;
      throw Error(ErrorCode::NonConvergence, "cauchy", os.str());
    }
    std::vector<double> qs(kPanelNodes);
    for (int j = 0; j < kPanelNodes; ++j) qs[j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[j];
    std::vector<double> phi(kPanelNodes);
    if (route == Route::e_class) {
      const auto g = operators::apply(spec, req.f, numerics::Grid(qs, numerics::Spacing::linear), req.cls);
      const auto& gv = g.values();
      std::copy(gv.begin(), gv.end(), phi.begin());
    } else {
      for (int j = 0; j < kPanelNodes; ++j) phi[j] = operators::apply_H(req.f, qs[j], spec, req.cls);
    }
    double m = 0.0;
    for (int j = 0; j < kPanelNodes; ++j) {
      sn.q.push_back(qs[j]);
      sn.w.push_back(0.5 * (hi - lo) * rule.weights[j]);
      sn.phi.push_back(phi[j]);
      m = std::max(m, std::abs(phi[j]) * std::exp(qs[j] * growth - std::pow(qs[j], a) * t_min) * (1.0 + qs[j]));
    }
    quiet = (lo > 1.0 && m < 1e-2 * req.tol) ? quiet + 1 : 0;
    lo = hi;
  }
  out.spectral_nodes = static_cast<long>(sn.q.size());

  const auto& xs = req.output_grid.points();
  std::vector<std::vector<double>> kern(xs.size(), std::vector<double>(sn.q.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < sn.q.size(); ++j)
      kern[i][j] = dual ? specfun::hatJ(sn.q[j] * xs[i], p) : specfun::calJ(sn.q[j] * xs[i], p);

  for (double t : req.times) {
    std::vector<double> c(sn.q.size());
    for (std::size_t j = 0; j < sn.q.size(); ++j) c[j] = sn.w[j] * sn.phi[j] * std::exp(-std::pow(sn.q[j], a) * t);
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      numerics::CompensatedSum<double> s;
      double l1 = 0.0;
      for (std::size_t j = 0; j < sn.q.size(); ++j) {
        const double term = c[j] * kern[i][j];
        s.add(term);
        l1 += std::abs(term);
      }
      if (l1 * 1e-16 > req.tol) {
        std::ostringstream os;
        os << "spectral sum at x=" << xs[i] << ", t=" << t << " cancels from magnitude " << l1
           << " below tolerance " << req.tol;
        throw Error(ErrorCode::NonConvergence, "cauchy", os.str());
      }
      v[i] = s.value();
    }
    auto hint = operators::fit_power_tail(req.output_grid, v);
    out.solutions.emplace_back(req.output_grid, std::move(v), hint);
  }
  return out;
}

double kernel_quadrature(const GridFunction& f, double t, double x, const specfun::AlphaParams& p, double tol) {
  if (!(t > 0.0) || !(x >= 0.0)) invalid("kernel_quadrature needs t > 0 and x >= 0");
  const double y_end = x + 12.0 * std::pow(std::max(t, 0.5), 1.0 / p.alpha);
  std::vector<double> bp;
  for (double y = 0.0; y < y_end; y += 0.5) bp.push_back(y);
  bp.push_back(y_end);
  numerics::AdaptiveOptions opt;
  opt.abs_tol = tol;
  return numerics::gauss_kronrod([&](double y) { return heatkernel::heat_kernel(t, x, y, p) * f(y); }, bp, opt)
      .value;
}

double solve_intertwined(const GridFunction& g, double t, double x, const specfun::AlphaParams& p, double tol) {
  if (!(t > 0.0) || !(x >= 0.0)) invalid("solve_intertwined needs t > 0 and x >= 0");
  const double a = p.alpha;
  numerics::AdaptiveOptions opt;
  opt.abs_tol = 1e-2 * tol;
  opt.throw_on_failure = false;
  // In v = y^alpha the Bessel-type law is a squared Bessel process at time t/2,
  // so sqrt(v) spreads by about sqrt(t/2) around sqrt(u^alpha).
  auto Qg = [&](double u) {
    const double r = std::pow(u, a / 2.0);
    const double s = 8.0 * std::sqrt(t);
    const double y_lo = std::pow(std::max(r - s, 0.0), 2.0 / a);
    const double y_hi = std::pow(r + s + 2.0, 2.0 / a);
    std::vector<double> bp{0.0};
    if (y_lo > 0.0) bp.push_back(y_lo);
    for (int k = 1; k <= 16; ++k) bp.push_back(y_lo + (y_hi - y_lo) * k / 16.0);
    return numerics::gauss_kronrod(
               [&](double y) { return y > 0.0 ? heatkernel::bessel_kernel_Q(t, u, y, p) * g(y) : 0.0; }, bp, opt)
        .value;
  };
  const auto qg = GridFunction::analytic(g.grid(), Qg);
  return operators::apply_lambda(qg, x, OperatorSpec{OperatorKind::Lambda, p});
}

double b_beta(double x, double beta, const specfun::AlphaParams& p) {
  check_beta(beta, p);
  if (!(x >= 0.0)) invalid("B_beta needs x >= 0");
  const auto r = b_series(x, beta, b_log_coeffs(beta, p, kBTerms));
  if (!std::isfinite(r.value) || r.max_term * std::numeric_limits<double>::epsilon() > 1e-8 * std::max(std::abs(r.value), 1.0)) {
    std::ostringstream os;
    os << "B_beta series at x=" << x << " (beta=" << beta << ") has terms up to " << r.max_term
       << ", beyond the double-precision stability range";
    throw Error(ErrorCode::CancellationOverflow, "cauchy", os.str());
  }
  return r.value;
}

GridFunction b_beta_function(const numerics::Grid& grid, double beta, const specfun::AlphaParams& p) {
  check_beta(beta, p);
  // Series up to its largest accurate argument, then one batch inversion on a
  // dense logarithmic table.
  auto logc = std::make_shared<const std::vector<double>>(b_log_coeffs(beta, p, kBTerms));
  double x_s = 1e-3;
  while (x_s < 1e4) {
    const auto r = b_series(2.0 * x_s, beta, *logc);
    if (!std::isfinite(r.value) || r.max_term >= 30.0) break;
    x_s *= 2.0;
  }
  const auto sym = mellin::MellinSymbol::from_ratio("B", mellin::ratio_B(p, beta), 0.0, 1.0);
  const auto dense_grid = numerics::Grid::logarithmic(x_s, 1e4, 4096);
  // The first pole of the Mellin transform right of the strip sits at s = 2.
  auto dense = std::make_shared<const GridFunction>(dense_grid, mellin::invert(sym, dense_grid.points(), 0.5, 1e-14),
                                                    numerics::DecayHint::power(2.0));
  auto eval = [beta, logc, x_s, dense](double x) {
    if (x <= x_s) return b_series(x, beta, *logc).value;
    return (*dense)(x);
  };
  return GridFunction::analytic(grid, eval, numerics::DecayHint::power(2.0));
}

double caputo_derivative(const Fn& f2, double x, const specfun::AlphaParams& p, double head_exponent) {
  if (!(x > 0.0)) invalid("Caputo derivative needs x > 0");
  if (!(head_exponent > -1.0)) invalid("Caputo head exponent must exceed -1");
  const double a = p.alpha;
  const double h = head_exponent;
  auto rule_value = [&](int n) {
    const auto r = numerics::gauss_jacobi_unit(n, 1.0 - a, h);
    numerics::CompensatedSum<double> s;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
      const double u = r.nodes[j];
      s.add(r.weights[j] * f2(x * u) * std::pow(u, -h));
    }
    return s.value() * std::pow(x, 2.0 - a) / std::tgamma(2.0 - a);
  };
  double prev = rule_value(24);
  for (int n = 48; n <= 192; n *= 2) {
    const double cur = rule_value(n);
    if (std::abs(cur - prev) <= 1e-10 * std::max(std::abs(cur), 1e-300)) return cur;
    if (n == 192) {
      if (std::abs(cur - prev) <= 1e-6 * std::max(std::abs(cur), 1e-300)) return cur;
      std::ostringstream os;
      os << "Caputo quadrature at x=" << x << " changes by " << std::abs(cur - prev) << " between " << n / 2
         << " and " << n << " nodes";
      throw Error(ErrorCode::NonConvergence, "cauchy", os.str());
    }
    prev = cur;
  }
  return prev;
}

double rl_right_derivative(const Fn& f2, double x, const specfun::AlphaParams& p, double decay_rate) {
  if (!(x >= 0.0)) invalid("right derivative needs x >= 0");
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
    std::ostringstream os;
    os << "right derivative needs an exponential tail rate > 0, got " << decay_rate;
    throw Error(ErrorCode::TailTooHeavy, "cauchy", os.str());
  }
  const double a = p.alpha;
  const double L = std::min(1.0, 1.0 / decay_rate);
  const double ref = std::max({std::abs(f2(x)), std::abs(f2(x + L)), 1e-300});
  const double far = x + L + 60.0 / decay_rate;
  if (std::abs(f2(far)) > std::exp(-30.0) * ref) {
    std::ostringstream os;
    os << "f'' at y=" << far << " is " << f2(far) << ", not the declared e^{-" << decay_rate << " y} tail";
    throw Error(ErrorCode::TailTooHeavy, "cauchy", os.str());
  }
  // Singular head int_0^L f''(x+s) s^{1-alpha} ds by Gauss-Jacobi in s = L u.
  const auto r = numerics::gauss_jacobi_unit(40, 0.0, 1.0 - a);
  numerics::CompensatedSum<double> head;
  for (std::size_t j = 0; j < r.nodes.size(); ++j) head.add(r.weights[j] * f2(x + L * r.nodes[j]));
  const double hv = head.value() * std::pow(L, 2.0 - a);
  const auto tail = numerics::integrate_semiinfinite(
      [&](double s) { return f2(x + L + s) * std::pow(L + s, 1.0 - a); }, numerics::DecayHint::stretched(decay_rate, 1.0),
      1e-14 * ref);
  return (hv + tail.value) / std::tgamma(2.0 - a);
}

}  // namespace stablespec::cauchy
