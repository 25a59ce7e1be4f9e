// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/operators/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "stablespec/error.hpp"
#include "stablespec/mellin/catalogue.hpp"
#include "stablespec/mellin/density.hpp"
#include "stablespec/numerics/gauss_jacobi.hpp"
#include "stablespec/numerics/quadrature.hpp"
#include "stablespec/numerics/vertical_line.hpp"
#include "stablespec/specfun/specfun.hpp"

namespace stablespec::operators {
namespace {

using numerics::DecayHint;
using numerics::DecayKind;
using numerics::GridFunction;
constexpr double kPi = boost::math::constants::pi<double>();

[[noreturn]] void class_violation(const std::string& what) {
  throw Error(ErrorCode::ClassViolation, "operators", what);
}

// lambda_alpha(e^u) on a uniform grid in u, for trapezoid sums of
// int F(y) lambda(y) dy = int F(e^u) lambda(e^u) e^u du.
struct LambdaTable {
  double h = 0.0;
  std::vector<double> u;
  std::vector<double> lam;
};

std::shared_ptr<const LambdaTable> lambda_table(const specfun::AlphaParams& p) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const LambdaTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p.alpha);
  if (it != cache.end()) return it->second;

  auto t = std::make_shared<LambdaTable>();
  t->h = 0.02;
  const double u_lo = -45.0;
  const double u_hi = std::log(400.0);
  std::vector<double> ys;
  for (double u = u_lo; u <= u_hi; u += t->h) {
    t->u.push_back(u);
    ys.push_back(std::exp(u));
  }
  t->lam = mellin::lambda_alpha(ys, p);
  // Drop the right tail once it is below the inversion noise.
  std::size_t peak = 0;
  for (std::size_t i = 0; i < ys.size(); ++i)
    if (t->lam[i] * ys[i] > t->lam[peak] * ys[peak]) peak = i;
  std::size_t end = ys.size();
  for (std::size_t i = peak; i < ys.size(); ++i) {
    if (std::abs(t->lam[i]) * ys[i] < 1e-14) {
      end = i;
      break;
    }
  }
  t->u.resize(end);
  t->lam.resize(end);
  for (double& v : t->lam) v = std::max(v, 0.0);
  cache.emplace(p.alpha, t);
  return t;
}

// Kernel and its natural breakpoints in z = q x.
struct Kernel {
  std::function<double(double)> k;
  std::function<double(int)> zbreak;    // increasing, zbreak(0) > 0
  std::function<double(double)> phase;  // half-periods of K on [0, z]
  bool oscillatory_tail = false;
};

Kernel make_kernel(OperatorKind kind, const specfun::AlphaParams& p) {
  Kernel K;
  switch (kind) {
    case OperatorKind::H_alpha: {
      K.k = [p](double z) { return specfun::besselJ_alpha(z, p); };
      const double ta = 2.0 / p.alpha;
      K.zbreak = [ta](int j) { return std::pow(0.5 * kPi * (j + 1), ta); };
      K.phase = [a = p.alpha](double z) { return 2.0 / kPi * std::pow(z, 0.5 * a); };
      K.oscillatory_tail = true;
      break;
    }
    case OperatorKind::calH: {
      K.k = [p](double z) { return specfun::calJ(z, p); };
      const double period = 2.0 * kPi / p.sin_pa;
      K.zbreak = [period](int j) {
        const double z = 0.5 * period * (j + 1);
        return z <= 40.0 ? z : 40.0 * std::pow(1.5, z / (0.5 * period) - std::floor(80.0 / period));
      };
      K.phase = [period](double z) { return z <= 40.0 ? 2.0 * z / period : 80.0 / period + std::log(z / 40.0); };
      break;
    }
    case OperatorKind::hat_calH: {
      K.k = [p](double z) { return specfun::hatJ(z, p); };
      const double half = kPi / p.sin_pa;
      K.zbreak = [half](int j) { return half * (j + 1); };
      K.phase = [half](double z) { return z / half; };
      K.oscillatory_tail = true;
      break;
    }
    default:
      throw Error(ErrorCode::InvalidArgument, "operators", "not a transform kind");
  }
  return K;
}

// Adaptive Gauss-Kronrod with breakpoints at grid nodes and kernel half-periods.
double integrate_panels(const std::function<double(double)>& integrand, double q, const Kernel& K, double xn,
                        const std::vector<double>& xs, const numerics::AdaptiveOptions& opt) {
  const double x0 = xs.front();
  std::vector<double> bp{0.0};
  if (x0 > 0.0) bp.push_back(x0);
  for (std::size_t i = 16; i + 1 < xs.size() && xs[i] < xn; i += 16) bp.push_back(xs[i]);
  if (q > 0.0) {
    for (int j = 0; j < 200000; ++j) {
      const double x = K.zbreak(j) / q;
      if (x >= xn) break;
      if (x > x0) bp.push_back(x);
    }
  }
  bp.push_back(xn);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  return numerics::gauss_kronrod(integrand, bp, opt).value;
}

const numerics::GaussRule& legendre_rule(int m) {
  static std::mutex mu;
  static std::map<int, numerics::GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, numerics::gauss_jacobi(m, 0.0, 0.0)).first;
  return it->second;
}

// A sampled function is smooth only between nodes, so each grid interval
// gets a fixed Gauss-Legendre rule sized by the kernel phase change.
double integrate_intervals(const std::function<double(double)>& integrand, double q, const Kernel& K, double xn,
                           const std::vector<double>& xs, const numerics::AdaptiveOptions& opt) {
  double value = numerics::gauss_kronrod(integrand, 0.0, xs.front(), opt).value;
  for (std::size_t i = 0; i + 1 < xs.size() && xs[i] < xn; ++i) {
    const double a = xs[i];
    const double b = xs[i + 1];
    const double dphi = K.phase(q * b) - K.phase(q * a);
    const int pieces = std::max(1, static_cast<int>(std::ceil(dphi / 2.0)));
    const int m = std::min(18, 6 + static_cast<int>(std::ceil(6.0 * dphi / pieces)));
    const auto& rule = legendre_rule(m);
    const double w = (b - a) / pieces;
    for (int k = 0; k < pieces; ++k) {
      const double c = a + (k + 0.5) * w;
      double sk = 0.0;
      for (int j = 0; j < m; ++j) sk += rule.weights[j] * integrand(c + 0.5 * w * rule.nodes[j]);
      value += 0.5 * w * sk;
    }
  }
  return value;
}

// int_0^inf f(x) K(q x) dx for a GridFunction f with its head, nodes and tail.
double transform_integral(const GridFunction& f, double q, const Kernel& K, double tol) {
  const auto& xs = f.grid().points();
  double xn = xs.back();
  // Sampled functions with a negligible tail: stop at the last node that matters.
  const bool light_tail = !f.decay_hint() || f.decay_hint()->kind == DecayKind::stretched_exponential;
  if (!f.has_exact() && light_tail) {
    std::size_t last = xs.size() - 1;
    while (last > 1 && std::abs(f.values()[last]) < 1e-6 * tol) --last;
    if (last + 1 < xs.size()) xn = xs[last + 1];
  }
  const bool truncated = xn < xs.back();
  auto integrand = [&](double x) { return f(x) * K.k(q * x); };
  numerics::AdaptiveOptions opt;
  opt.abs_tol = tol;
  opt.max_evals = 2000000;
  double value = f.has_exact() ? integrate_panels(integrand, q, K, xn, xs, opt)
                               : integrate_intervals(integrand, q, K, xn, xs, opt);

  // Tail beyond the last node.
  const double fn = f(xn);
  if (truncated || fn == 0.0 || !f.decay_hint()) return value;
  const DecayHint& d = *f.decay_hint();
  if (d.kind == DecayKind::stretched_exponential) {
    // Doubling panels until the integrand is negligible.
    double a = xn;
    for (int it = 0; it < 60; ++it) {
      const double b = 2.0 * a;
      const double pv = numerics::gauss_kronrod(integrand, a, b, opt).value;
      value += pv;
      if (std::abs(f(b)) * b < 1e-3 * tol && std::abs(pv) < 1e-3 * tol) break;
      a = b;
    }
    return value;
  }
  if (K.oscillatory_tail && q > 0.0) {
    // Start the panel sum at the first kernel breakpoint past xn.
    int j0 = 0;
    while (K.zbreak(j0) / q <= xn) ++j0;
    auto brk = [&](int j) { return j == 0 ? xn : K.zbreak(j0 + j - 1) / q; };
    const auto r = numerics::integrate_oscillatory(integrand, brk, tol, 8, 20000);
    if (!std::isfinite(r.abs_error_estimate)) {
      std::ostringstream os;
      os << "oscillatory tail integral at q=" << q << " did not converge";
      throw Error(ErrorCode::NonConvergence, "operators", os.str());
    }
    return value + r.value;
  }
  std::vector<double> tb;
  for (double b = xn; b < xn * 1e12; b *= 2.0) tb.push_back(b);
  return value + numerics::gauss_kronrod(integrand, tb, opt).value;
}

mellin::MellinSymbol hat_symbol_for_term(const specfun::AlphaParams& p, double kappa, double tau) {
  const mellin::GammaRatio r = mellin::ratio_hatH(p) * mellin::ratio_e(p, kappa, tau).reflected();
  return mellin::MellinSymbol::from_ratio("hatH*e", r, 0.0, 1.0);
}

// log of max_x |f(x) hatJ(q x)| for an E-class function, from its envelope.
double log_cancellation(const FunctionClass& cls, const specfun::AlphaParams& p, double q) {
  const double c = q * std::abs(p.cos_pa);
  const double r = p.alpha * cls.kappa;
  double best = -1e300;
  for (const auto& t : cls.terms) {
    // max of c x - tau x^r at x = (c / (tau r))^{1/(r-1)}; r > 1 here.
    const double x = std::pow(c / (t.tau * r), 1.0 / (r - 1.0));
    best = std::max(best, std::log(std::abs(t.coefficient) + 1e-300) + c * x - t.tau * std::pow(x, r));
  }
  return best + std::log(p.gamma_inv_alpha / kPi);
}

std::vector<double> hat_e_class_mellin(const FunctionClass& cls, const specfun::AlphaParams& p,
                                       const std::vector<double>& qs, double tol) {
  std::vector<double> out(qs.size(), 0.0);
  for (const auto& t : cls.terms) {
    const auto v = mellin::invert(hat_symbol_for_term(p, cls.kappa, t.tau), qs, 0.5, tol);
    for (std::size_t i = 0; i < qs.size(); ++i) out[i] += t.coefficient * v[i];
  }
  return out;
}

bool e_class_integral_ok(const FunctionClass& cls, const specfun::AlphaParams& p, double q, double tol) {
  return std::exp(log_cancellation(cls, p, q)) * 1e-15 < 0.1 * tol;
}

void guard_weighted(const GridFunction& f, double q, const Kernel& K, double tol) {
  const auto& xs = f.grid().points();
  double peak = 0.0;
  for (double x : xs) peak = std::max(peak, std::abs(f(x) * K.k(q * x)));
  const double end = std::abs(f(xs.back()) * K.k(q * xs.back()));
  if (!(end < tol * std::max(peak, 1.0))) {
    std::ostringstream os;
    os << "co-transform integrand at x_max=" << xs.back() << " is " << end << " (peak " << peak
       << "); the declared class does not make the integral converge at q=" << q;
    class_violation(os.str());
  }
  if (peak * 1e-15 > tol) {
    std::ostringstream os;
    os << "co-transform at q=" << q << " cancels from magnitude " << peak << " below tolerance " << tol;
    throw Error(ErrorCode::NonConvergence, "operators", os.str());
  }
}

}  // namespace

FunctionClass FunctionClass::l2() { return {}; }

FunctionClass FunctionClass::e_alpha_kappa(double kappa, std::vector<StretchedTerm> terms) {
  FunctionClass c;
  c.tag = Tag::E_alpha_kappa;
  c.kappa = kappa;
  c.terms = std::move(terms);
  return c;
}

FunctionClass FunctionClass::weighted(double kappa, double eta) {
  FunctionClass c;
  c.tag = Tag::WeightedL2;
  c.kappa = kappa;
  c.eta = eta;
  return c;
}

FunctionClass FunctionClass::range_lambda(numerics::GridFunction preimage) {
  FunctionClass c;
  c.tag = Tag::RangeLambda;
  c.preimage = std::make_shared<const numerics::GridFunction>(std::move(preimage));
  return c;
}

void FunctionClass::validate(const specfun::AlphaParams& p) const {
  const double a = p.alpha;
  std::ostringstream os;
  switch (tag) {
    case Tag::L2_plain:
      return;
    case Tag::E_alpha_kappa:
      if (!(kappa >= 1.0 && kappa < 1.0 / (2.0 - a))) {
        os << "E class needs 1 <= kappa < 1/(2-alpha) = " << 1.0 / (2.0 - a) << ", got " << kappa;
        class_violation(os.str());
      }
      if (terms.empty()) class_violation("E class needs at least one term");
      for (const auto& t : terms)
        if (!(t.tau > 0.0)) class_violation("E class terms need tau > 0");
      return;
    case Tag::WeightedL2:
      if (!(kappa >= a / (a - 1.0) && eta > 0.0)) {
        os << "weighted class needs kappa >= alpha/(alpha-1) = " << a / (a - 1.0) << " and eta > 0";
        class_violation(os.str());
      }
      return;
    case Tag::RangeLambda:
      if (!preimage) class_violation("range class needs a preimage");
      return;
  }
}

numerics::GridFunction stretched_family(const numerics::Grid& grid, const specfun::AlphaParams& p,
                                        const FunctionClass& cls) {
  if (cls.tag != FunctionClass::Tag::E_alpha_kappa) class_violation("stretched_family needs an E class");
  cls.validate(p);
  const double r = p.alpha * cls.kappa;
  const auto terms = cls.terms;
  double tau_min = terms.front().tau;
  for (const auto& t : terms) tau_min = std::min(tau_min, t.tau);
  auto f = [terms, r](double x) {
    double s = 0.0;
    for (const auto& t : terms) s += t.coefficient * std::exp(-t.tau * std::pow(x, r));
    return s;
  };
  return GridFunction::analytic(grid, f, DecayHint::stretched(tau_min, r));
}

double apply_lambda(const GridFunction& f, double x, const OperatorSpec& spec) {
  if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "operators", "Lambda needs x >= 0");
  if (x == 0.0) return f(0.0);
  const auto t = lambda_table(spec.params);
  double s = 0.0;
  for (std::size_t j = 0; j < t->u.size(); ++j) {
    const double y = std::exp(t->u[j]);
    s += t->lam[j] * y * f(x * y);
  }
  return t->h * s;
}

double apply_lambda_adjoint(const GridFunction& g, double x, const OperatorSpec& spec) {
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "operators", "adjoint needs x > 0");
  const auto t = lambda_table(spec.params);
  double s = 0.0;
  for (std::size_t j = 0; j < t->u.size(); ++j) s += t->lam[j] * g(x * std::exp(-t->u[j]));
  return t->h * s;
}

double apply_H(const GridFunction& f, double q, const OperatorSpec& spec, const FunctionClass& cls) {
  if (!(q >= 0.0)) throw Error(ErrorCode::InvalidArgument, "operators", "transform needs q >= 0");
  const auto& p = spec.params;
  switch (spec.kind) {
    case OperatorKind::Lambda:
      return apply_lambda(f, q, spec);
    case OperatorKind::LambdaAdjoint:
      return apply_lambda_adjoint(f, q, spec);
    case OperatorKind::H_alpha:
    case OperatorKind::calH:
      return transform_integral(f, q, make_kernel(spec.kind, p), spec.quad_tol);
    case OperatorKind::hat_calH:
      break;
  }
  cls.validate(p);
  switch (cls.tag) {
    case FunctionClass::Tag::L2_plain:
      class_violation("co-transform needs a declared class (E, weighted or range of Lambda)");
    case FunctionClass::Tag::RangeLambda: {
      OperatorSpec h = spec;
      h.kind = OperatorKind::H_alpha;
      return apply_H(*cls.preimage, q, h);
    }
    case FunctionClass::Tag::E_alpha_kappa: {
      if (e_class_integral_ok(cls, p, q, spec.quad_tol)) {
        const GridFunction fe = stretched_family(f.grid(), p, cls);
        return transform_integral(fe, q, make_kernel(OperatorKind::hat_calH, p), spec.quad_tol);
      }
      return hat_e_class_mellin(cls, p, {q}, spec.quad_tol)[0];
    }
    case FunctionClass::Tag::WeightedL2: {
      const Kernel K = make_kernel(OperatorKind::hat_calH, p);
      guard_weighted(f, q, K, spec.quad_tol);
      GridFunction g(f.grid(), f.values());  // no extrapolated tail: the class decays super-exponentially
      return transform_integral(f.has_exact() ? f : g, q, K, spec.quad_tol);
    }
  }
  return 0.0;
}

std::optional<DecayHint> fit_power_tail(const numerics::Grid& grid, const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n < 3) return std::nullopt;
  const double a = v[n - 2];
  const double b = v[n - 1];
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (a == 0.0 || b == 0.0 || a * b < 0.0 || std::abs(b) < 1e-12 * peak) return std::nullopt;
  const double r = -std::log(b / a) / std::log(grid[n - 1] / grid[n - 2]);
  if (!(r > 1.0) || r > 60.0) return std::nullopt;
  return DecayHint::power(r);
}

numerics::GridFunction apply(const OperatorSpec& spec, const GridFunction& f, const numerics::Grid& out,
                             const FunctionClass& cls, std::optional<DecayHint> out_hint) {
  const auto& qs = out.points();
  std::vector<double> v(qs.size(), 0.0);
  if (spec.kind == OperatorKind::hat_calH && cls.tag == FunctionClass::Tag::E_alpha_kappa) {
    cls.validate(spec.params);
    std::vector<double> mq;
    std::vector<std::size_t> mi;
    const GridFunction fe = stretched_family(f.grid(), spec.params, cls);
    const Kernel K = make_kernel(OperatorKind::hat_calH, spec.params);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (e_class_integral_ok(cls, spec.params, qs[i], spec.quad_tol)) {
        v[i] = transform_integral(fe, qs[i], K, spec.quad_tol);
      } else {
        mq.push_back(qs[i]);
        mi.push_back(i);
      }
    }
    if (!mq.empty()) {
      const auto m = hat_e_class_mellin(cls, spec.params, mq, spec.quad_tol);
      for (std::size_t j = 0; j < mi.size(); ++j) v[mi[j]] = m[j];
    }
  } else {
    for (std::size_t i = 0; i < qs.size(); ++i) v[i] = apply_H(f, qs[i], spec, cls);
  }
  if (!out_hint) out_hint = fit_power_tail(out, v);
  return GridFunction(out, std::move(v), out_hint);
}

}  // namespace stablespec::operators
