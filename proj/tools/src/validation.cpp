// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec_tools/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <sstream>

#include "stablespec/cauchy/cauchy.hpp"
#include "stablespec/heatkernel/heatkernel.hpp"
#include "stablespec/mellin/catalogue.hpp"
#include "stablespec/numerics/quadrature.hpp"
#include "stablespec/operators/operators.hpp"
#include "stablespec/specfun/specfun.hpp"
#include "stablespec/stablemc/stablemc.hpp"

namespace stablespec::tools {
namespace {

using numerics::Grid;
using numerics::GridFunction;
using operators::FunctionClass;
using operators::OperatorKind;
using operators::OperatorSpec;
using specfun::AlphaParams;

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

class Runner {
 public:
  explicit Runner(const SuiteOptions& opt) : opt_(opt) {}

  // body returns pass and fills detail; exceptions count as failures.
  void check(int id, const std::string& name, const std::function<bool(std::ostringstream&)>& body,
             double time_limit = 0.0) {
    CheckResult r;
    r.id = id;
    r.name = name;
    std::ostringstream d;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.pass = body(d);
    } catch (const std::exception& e) {
      r.pass = false;
      d << "exception: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit > 0.0) {
      d << "; runtime limit " << time_limit << " s";
      if (r.seconds > time_limit) {
        r.pass = false;
        d << " exceeded";
      }
    }
    r.detail = d.str();
    if (opt_.on_result) opt_.on_result(r);
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const SuiteOptions& opt_;
  std::vector<CheckResult> results_;
};

double factorization_defect(const AlphaParams& p) {
  double worst = 0.0;
  for (double b = -50.0; b <= 50.0; b += 0.125) {
    const std::complex<double> s(0.5, b);
    const auto lhs = mellin::symbol("X", p, s) * mellin::symbol("Lambda", p, s);
    const auto rhs = mellin::symbol("G", p, s);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return worst;
}

// Spans the admissible kappa range [1, 1/(2-alpha)) the way the alpha = 1.5
// set {1, 1, 4/3, 4/3, 5/3} does.
std::vector<std::pair<double, double>> round_trip_set(double alpha) {
  const double r = std::min(1.0, 1.0 / (2.0 - alpha) - 1.0);
  return {{1.0, 1.0}, {1.0, 2.0}, {1.0 + r / 3.0, 1.0}, {1.0 + r / 3.0, 0.5}, {1.0 + 2.0 * r / 3.0, 1.0}};
}

double kernel_moment(const std::function<double(double)>& f, double t, double x, const AlphaParams& p) {
  std::vector<double> bp;
  for (double y = 0.0; y <= 12.0; y += 0.5) bp.push_back(y);
  numerics::AdaptiveOptions o;
  o.abs_tol = 1e-10;
  return numerics::gauss_kronrod([&](double y) { return heatkernel::heat_kernel(t, x, y, p) * f(y); }, bp, o).value;
}

double scaled_remainder(double x, int N, const AlphaParams& p) {
  const double r = specfun::calJ(x, p) - specfun::calJ_asymptotic_partial(x, p, 0, N);
  return std::abs(r) * std::pow(x, p.alpha * (N + 2));
}

}  // namespace

std::vector<CheckResult> run_acceptance(const SuiteOptions& opt) {
  Runner run(opt);
  const AlphaParams p(opt.alpha);
  const double a = p.alpha;
  const Grid grid = Grid::default_grid();

  run.check(1, "Mellin factorization M_X M_Lambda = M_G on Re s = 1/2, |b| <= 50", [&](std::ostringstream& d) {
    bool ok = true;
    for (double al : {1.1, 1.5, 1.9}) {
      const double e = factorization_defect(AlphaParams(al));
      d << "alpha=" << al << ": " << fmt("%.2e", e) << "  ";
      ok = ok && e < 1e-12;
    }
    d << "(tol 1e-12)";
    return ok;
  }, 1.0);

  run.check(2, "Lambda g_alpha = e_alpha and Lambda J = calJ", [&](std::ostringstream& d) {
    const OperatorSpec L{OperatorKind::Lambda, p};
    const auto g = GridFunction::analytic(grid, [&](double x) { return specfun::g_alpha(x, p); });
    const auto J = GridFunction::analytic(grid, [&](double x) { return specfun::besselJ_alpha(x, p); });
    double e1 = 0.0;
    double e2 = 0.0;
    for (double x : {0.25, 0.5, 1.0, 2.0}) {
      e1 = std::max(e1, std::abs(operators::apply_lambda(g, x, L) - std::exp(-std::pow(x, a))));
      e2 = std::max(e2, std::abs(operators::apply_lambda(J, x, L) - specfun::calJ(x, p)));
    }
    d << "max abs err " << fmt("%.2e", e1) << " / " << fmt("%.2e", e2) << " (tol 1e-6)";
    return e1 < 1e-6 && e2 < 1e-6;
  }, 10.0);

  std::vector<double> frame_ratios;
  run.check(3, "transform round trips on 5 stretched exponentials", [&](std::ostringstream& d) {
    const OperatorSpec H{OperatorKind::H_alpha, p};
    const OperatorSpec C{OperatorKind::calH, p};
    const OperatorSpec Hh{OperatorKind::hat_calH, p};
    double hh = 0.0;
    double hath = 0.0;
    double chh = 0.0;
    for (const auto& [kappa, tau] : round_trip_set(a)) {
      const auto cls = FunctionClass::e_alpha_kappa(kappa, {{tau, 1.0}});
      const auto f = operators::stretched_family(grid, p, cls);
      const auto Hf = operators::apply(H, f, grid);
      // calH f = Lambda H_alpha f, so hatH calH f uses the preimage H_alpha f.
      const auto Cf = operators::apply(C, f, grid);
      const auto back = operators::apply(Hh, Cf, grid, FunctionClass::range_lambda(Hf));
      hath = std::max(hath, numerics::l2_relative_error(back, f));
      hh = std::max(hh, numerics::l2_relative_error(operators::apply(H, Hf, grid), f));
      const auto hf = operators::apply(Hh, f, grid, cls);
      chh = std::max(chh, numerics::l2_relative_error(operators::apply(C, hf, grid), f));
      frame_ratios.push_back(numerics::l2_norm(Cf) / numerics::l2_norm(f));
    }
    d << "hatH calH f: " << fmt("%.2e", hath) << ", H_alpha H_alpha f: " << fmt("%.2e", hh)
      << ", calH hatH f: " << fmt("%.2e", chh) << " (tol 1e-5)";
    return hath < 1e-5 && hh < 1e-5 && chh < 1e-5;
  }, 30.0);

  run.check(4, "upper frame bound ||calH f|| <= Gamma(1-1/a)/Gamma(1+1/a) ||f||", [&](std::ostringstream& d) {
    const double B = std::tgamma(1.0 - 1.0 / a) / std::tgamma(1.0 + 1.0 / a);
    if (frame_ratios.empty()) {
      d << "no ratios (round trips failed to run)";
      return false;
    }
    const double worst = *std::max_element(frame_ratios.begin(), frame_ratios.end());
    d << "max ratio " << fmt("%.6f", worst) << " <= " << fmt("%.6f", B) << " * (1 + 1e-6)";
    return worst <= B * (1.0 + 1e-6);
  });

  run.check(5, "kernel integral vs series on {0.5,1,2}x{0.5,1}x{0.5,1}", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0})
      for (double x : {0.5, 1.0})
        for (double y : {0.5, 1.0}) {
          heatkernel::KernelRequest r;
          r.t = t;
          r.x = x;
          r.y = y;
          const double vi = heatkernel::kernel_integral(r, p).value;
          const double vs = heatkernel::kernel_series(r, p).value;
          worst = std::max(worst, std::abs(vi - vs));
        }
    d << "max |integral - series| " << fmt("%.2e", worst) << " (tol 1e-6)";
    return worst < 1e-6;
  }, 60.0);

  run.check(6, "kernel mass and Chapman-Kolmogorov", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0})
      for (double x : {0.0, 0.5, 1.0, 3.0})
        worst = std::max(worst, std::abs(kernel_moment([](double) { return 1.0; }, t, x, p) - 1.0));
    const double ck = kernel_moment([&](double z) { return heatkernel::heat_kernel(0.5, z, 1.0, p); }, 0.5, 1.0, p);
    const double ref = heatkernel::heat_kernel(1.0, 1.0, 1.0, p);
    const double ck_err = std::abs(ck / ref - 1.0);
    d << "max |mass - 1| " << fmt("%.2e", worst) << " (tol 1e-6), CK rel err " << fmt("%.2e", ck_err)
      << " (tol 1e-4)";
    return worst < 1e-6 && ck_err < 1e-4;
  }, 120.0);

  run.check(7, "eigenfunction identity P_t calJ(q.) = e^{-q^a t} calJ(q.) at (1, 0.5, 1)", [&](std::ostringstream& d) {
    const double v = kernel_moment([&](double y) { return specfun::calJ(y, p); }, 0.5, 1.0, p);
    const double ref = std::exp(-0.5) * specfun::calJ(1.0, p);
    const double e = std::abs(v / ref - 1.0);
    d << "rel err " << fmt("%.2e", e) << " (tol 1e-4)";
    return e < 1e-4;
  });

  run.check(8, "intertwining P_t Lambda e = Lambda Q_t e, t = 0.5", [&](std::ostringstream& d) {
    const OperatorSpec L{OperatorKind::Lambda, p};
    const auto e1 = GridFunction::analytic(grid, [&](double x) { return std::exp(-std::pow(x, a)); },
                                           numerics::DecayHint::stretched(1.0, a));
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
      const double lhs = kernel_moment([&](double y) { return operators::apply_lambda(e1, y, L); }, 0.5, x, p);
      const double rhs = cauchy::solve_intertwined(e1, 0.5, x, p);
      worst = std::max(worst, std::abs(lhs / rhs - 1.0));
    }
    d << "max rel err " << fmt("%.2e", worst) << " (tol 1e-4)";
    return worst < 1e-4;
  });

  run.check(9, "Caputo eigen-relation and right RL closed form", [&](std::ostringstream& d) {
    const double cap = cauchy::caputo_derivative([&](double y) { return specfun::calJ(y, p, 2); }, 1.0, p, a - 2.0);
    const double e1 = std::abs(cap / (-specfun::calJ(1.0, p)) - 1.0);
    const double rl = cauchy::rl_right_derivative([](double y) { return std::exp(-y); }, 1.0, p, 1.0);
    const double e2 = std::abs(rl / std::exp(-1.0) - 1.0);
    d << "Caputo rel err " << fmt("%.2e", e1) << " (tol 1e-4), RL rel err " << fmt("%.2e", e2) << " (tol 1e-8)";
    return e1 < 1e-4 && e2 < 1e-8;
  });

  run.check(10, "alpha -> 2: kernel at alpha = 1.99 vs reflected Gaussian", [&](std::ostringstream& d) {
    const double gauss = (1.0 / (2.0 * std::sqrt(M_PI))) * (1.0 + std::exp(-1.0));
    const double v = heatkernel::heat_kernel(1.0, 1.0, 1.0, AlphaParams(1.99));
    const double e = std::abs(v / gauss - 1.0);
    d << "P_1(1,1) = " << fmt("%.8f", v) << " vs " << fmt("%.8f", gauss) << ", rel " << fmt("%.2e", e)
      << " (tol 2e-2)";
    return e < 2e-2;
  });

  run.check(11, "Monte Carlo vs spectral values, 1e5 paths, 500 steps", [&](std::ostringstream& d) {
    stablemc::MCConfig cfg;
    cfg.params = p;
    cfg.seed = opt.seed;
    const auto est = stablemc::estimate_Ptf(
        {[&](double x) { return specfun::calJ(x, p); }, [&](double x) { return std::exp(-std::pow(x, a)); }}, 1.0, 0.5,
        cfg);
    const double ref1 = std::exp(-0.5) * specfun::calJ(1.0, p);
    const auto cls = FunctionClass::e_alpha_kappa(1.0, {{1.0, 1.0}});
    cauchy::SolveRequest req{operators::stretched_family(grid, p, cls), cls, {0.5},
                             Grid({0.5, 1.0, 2.0}, numerics::Spacing::linear)};
    const double ref2 = cauchy::solve(req, p).solutions[0].values()[1];
    const double z1 = (est[0].mean - ref1) / est[0].std_error;
    const double z2 = (est[1].mean - ref2) / est[1].std_error;
    d << "eigen statistic " << fmt("%.2f", z1) << " stderr, e_alpha solve " << fmt("%.2f", z2)
      << " stderr (tol 3)";
    return std::abs(z1) < 3.0 && std::abs(z2) < 3.0;
  }, 300.0);

  run.check(12, "asymptotic remainder |calJ - S_N| x^{a(N+2)} bounded, non-increasing on {20,40,80}",
            [&](std::ostringstream& d) {
              bool ok = true;
              for (int N : {0, 1}) {
                const double r20 = scaled_remainder(20.0, N, p);
                const double r40 = scaled_remainder(40.0, N, p);
                const double r80 = scaled_remainder(80.0, N, p);
                const bool good = std::isfinite(r20 + r40 + r80) && r40 <= r20 && r80 <= r40;
                d << "N=" << N << ": " << fmt("%.4g", r20) << ", " << fmt("%.4g", r40) << ", " << fmt("%.4g", r80)
                  << (good ? "" : " (increases)") << "  ";
                ok = ok && good;
              }
              return ok;
            });

  return run.take();
}

std::vector<CheckResult> run_quick(const SuiteOptions& opt) {
  Runner run(opt);
  const AlphaParams p(opt.alpha);
  const double a = p.alpha;
  const Grid grid = Grid::default_grid();

  run.check(1, "Mellin factorization defect", [&](std::ostringstream& d) {
    const double e = factorization_defect(p);
    d << fmt("%.2e", e) << " (tol 1e-12)";
    return e < 1e-12;
  });
  run.check(2, "hatJ(0) closed form", [&](std::ostringstream& d) {
    const double ref = p.gamma_inv_alpha * p.sin_pa / M_PI;
    const double e = std::abs(specfun::hatJ(0.0, p) - ref);
    d << "abs err " << fmt("%.2e", e);
    return e < 1e-15;
  });
  run.check(3, "Lambda g_alpha = e_alpha at x = 1", [&](std::ostringstream& d) {
    const auto g = GridFunction::analytic(grid, [&](double x) { return specfun::g_alpha(x, p); });
    const double e = std::abs(operators::apply_lambda(g, 1.0, OperatorSpec{OperatorKind::Lambda, p}) - std::exp(-1.0));
    d << "abs err " << fmt("%.2e", e) << " (tol 1e-6)";
    return e < 1e-6;
  });
  run.check(4, "kernel integral vs series at (1, 1, 1)", [&](std::ostringstream& d) {
    heatkernel::KernelRequest r;
    r.t = 1.0;
    r.x = 1.0;
    r.y = 1.0;
    const double e = std::abs(heatkernel::kernel_integral(r, p).value - heatkernel::kernel_series(r, p).value);
    d << "abs diff " << fmt("%.2e", e) << " (tol 1e-6)";
    return e < 1e-6;
  });
  run.check(5, "kernel mass at t = 2, x = 1", [&](std::ostringstream& d) {
    const double e = std::abs(kernel_moment([](double) { return 1.0; }, 2.0, 1.0, p) - 1.0);
    d << "|mass - 1| " << fmt("%.2e", e) << " (tol 1e-6)";
    return e < 1e-6;
  });
  run.check(6, "Bessel-type kernel mass at (1, 1)", [&](std::ostringstream& d) {
    std::vector<double> bp;
    for (double y = 0.0; y <= 12.0; y += 0.5) bp.push_back(y);
    numerics::AdaptiveOptions o;
    o.abs_tol = 1e-11;
    const double q = numerics::gauss_kronrod(
                         [&](double y) { return y > 0.0 ? heatkernel::bessel_kernel_Q(1.0, 1.0, y, p) : 0.0; }, bp, o)
                         .value;
    d << "|mass - 1| " << fmt("%.2e", std::abs(q - 1.0)) << " (tol 1e-8)";
    return std::abs(q - 1.0) < 1e-8;
  });
  run.check(7, "Caputo of y^2.5 and right RL of e^{-y}", [&](std::ostringstream& d) {
    const double b = 2.5;
    const double c =
        cauchy::caputo_derivative([&](double y) { return b * (b - 1.0) * std::pow(y, b - 2.0); }, 1.3, p, b - 2.0);
    const double cref = std::tgamma(b + 1.0) / std::tgamma(b + 1.0 - a) * std::pow(1.3, b - a);
    const double rl = cauchy::rl_right_derivative([](double y) { return std::exp(-y); }, 1.0, p, 1.0);
    const double e1 = std::abs(c / cref - 1.0);
    const double e2 = std::abs(rl / std::exp(-1.0) - 1.0);
    d << "rel err " << fmt("%.2e", e1) << " / " << fmt("%.2e", e2) << " (tol 1e-8)";
    return e1 < 1e-8 && e2 < 1e-8;
  });
  run.check(8, "T_alpha positive on the critical weighted class", [&](std::ostringstream& d) {
    const double T = cauchy::T_alpha(a / (a - 1.0), 1.0, p);
    d << "T_alpha(kappa=a/(a-1), eta=1) = " << fmt("%.6f", T);
    return T > 0.0 && cauchy::T_alpha(2.0 * a / (a - 1.0), 1.0, p) == 0.0;
  });
  run.check(9, "stable increment MGF at z = 1, dt = 0.1 (1e5 samples)", [&](std::ostringstream& d) {
    auto rng = stablemc::path_stream(opt.seed, 0);
    const int n = 100000;
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = std::exp(stablemc::sample_stable_increment(0.1, rng, p));
      s += e;
      s2 += e * e;
    }
    const double m = s / n;
    const double se = std::sqrt((s2 / n - m * m) / n);
    const double z = (m - std::exp(0.1)) / se;
    d << fmt("%.2f", z) << " stderr (tol 3)";
    return std::abs(z) < 3.0;
  });
  run.check(10, "E-route solve vs kernel quadrature at (0.5, 1)", [&](std::ostringstream& d) {
    const auto cls = FunctionClass::e_alpha_kappa(1.0, {{1.0, 1.0}});
    const auto f = operators::stretched_family(grid, p, cls);
    cauchy::SolveRequest req{f, cls, {0.5}, Grid({0.5, 1.0}, numerics::Spacing::linear)};
    const double u = cauchy::solve(req, p).solutions[0].values()[1];
    const double k = cauchy::kernel_quadrature(f, 0.5, 1.0, p);
    const double e = std::abs(u / k - 1.0);
    d << "rel err " << fmt("%.2e", e) << " (tol 1e-4)";
    return e < 1e-4;
  });
  return run.take();
}

std::string format_line(const CheckResult& r) {
  char head[32];
  std::snprintf(head, sizeof head, "%s  [%2d] ", r.pass ? "PASS" : "FAIL", r.id);
  return std::string(head) + r.name + ": " + r.detail + " (" + fmt("%.1f", r.seconds) + " s)";
}

void print_summary(std::ostream& os, const std::vector<CheckResult>& results) {
  const auto passed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
  os << passed << "/" << results.size() << " checks passed\n";
}

}  // namespace stablespec::tools
