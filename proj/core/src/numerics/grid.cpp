// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/numerics/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "stablespec/error.hpp"

namespace stablespec::numerics {
namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, "numerics", what);
}

// Derivative at u[0] of the Lagrange polynomial through the first m points.
double one_sided_slope(const double* u, const double* y, std::size_t m) {
  double d = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    // l_j'(u0)
    double lj = 0.0;
    if (j == 0) {
      for (std::size_t k = 1; k < m; ++k) lj += 1.0 / (u[0] - u[k]);
    } else {
      double num = 1.0;
      double den = 1.0;
      for (std::size_t k = 0; k < m; ++k) {
        if (k == j) continue;
        den *= u[j] - u[k];
        if (k != 0) num *= u[0] - u[k];
      }
      lj = num / den;
    }
    d += lj * y[j];
  }
  return d;
}

// e^{w} Gamma(a, w)
double scaled_upper_gamma(double a, double w) {
  if (w < 40.0) return std::exp(w) * boost::math::tgamma(a, w);
  double term = std::pow(w, a - 1.0);
  double sum = term;
  for (int k = 1; k < 12; ++k) {
    term *= (a - k) / w;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

Grid::Grid(std::vector<double> points, Spacing spacing)
    : points_(std::move(points)), spacing_(spacing) {
  if (points_.size() < 2) bad("grid needs at least 2 points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i] >= 0.0) || !std::isfinite(points_[i])) bad("grid points must be finite and >= 0");
    if (i > 0 && !(points_[i] > points_[i - 1])) bad("grid points must be strictly increasing");
  }
  if (spacing_ == Spacing::logarithmic && points_.front() <= 0.0)
    bad("logarithmic grid needs a positive lower bound");
}

Grid Grid::linear(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) bad("linear grid needs n >= 2 and hi > lo");
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  p.back() = hi;
  return Grid(std::move(p), Spacing::linear);
}

Grid Grid::logarithmic(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) bad("logarithmic grid needs n >= 2 and 0 < lo < hi");
  std::vector<double> p(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) p[i] = std::exp(a + (b - a) * static_cast<double>(i) / (n - 1));
  p.front() = lo;
  p.back() = hi;
  return Grid(std::move(p), Spacing::logarithmic);
}

Grid Grid::default_grid() { return logarithmic(1e-4, 50.0, 512); }

GridFunction::GridFunction(Grid grid, std::vector<double> values, std::optional<DecayHint> decay)
    : grid_(std::move(grid)), values_(std::move(values)), decay_(decay) {
  if (values_.size() != grid_.size()) bad("values length must equal grid length");
  for (double v : values_)
    if (!std::isfinite(v)) bad("grid function values must be finite");
  build();
}

GridFunction GridFunction::sample(const Grid& grid, const Fn& f, std::optional<DecayHint> decay) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
  return GridFunction(grid, std::move(v), decay);
}

GridFunction GridFunction::analytic(const Grid& grid, Fn f, std::optional<DecayHint> decay) {
  GridFunction g = sample(grid, f, decay);
  g.exact_ = std::move(f);
  return g;
}

GridFunction GridFunction::sampled_only() const {
  GridFunction g = *this;
  g.exact_ = nullptr;
  return g;
}

void GridFunction::build() {
  const auto& x = grid_.points();
  const std::size_t n = x.size();
  log_coords_ = grid_.spacing() == Spacing::logarithmic;
  u_.resize(n);
  for (std::size_t i = 0; i < n; ++i) u_[i] = log_coords_ ? std::log(x[i]) : x[i];

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = u_[i + 1] - u_[i];
    delta[i] = (values_[i + 1] - values_[i]) / h[i];
  }
  slopes_.assign(n, delta[0]);
  if (n >= 3) {
    const std::size_t m = std::min<std::size_t>(4, n);
    std::vector<double> ur(m), yr(m);
    const double s0 = one_sided_slope(u_.data(), values_.data(), m);
    for (std::size_t j = 0; j < m; ++j) {
      ur[j] = u_[n - 1 - j];
      yr[j] = values_[n - 1 - j];
    }
    const double sn = one_sided_slope(ur.data(), yr.data(), m);

    // C2 spline slopes with clamped ends (Thomas algorithm).
    std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), r(n, 0.0);
    r[0] = s0;
    r[n - 1] = sn;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      a[i] = 1.0 / h[i - 1];
      c[i] = 1.0 / h[i];
      b[i] = 2.0 * (a[i] + c[i]);
      r[i] = 3.0 * (delta[i - 1] / h[i - 1] + delta[i] / h[i]);
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      r[i] -= w * r[i - 1];
    }
    slopes_[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) slopes_[i] = (r[i] - c[i] * slopes_[i + 1]) / b[i];

    // Hyman filter.
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0 || i == n - 1) {
        const double d = (i == 0) ? delta[0] : delta[n - 2];
        if (d == 0.0 || slopes_[i] * d < 0.0) {
          slopes_[i] = 0.0;
        } else if (std::abs(slopes_[i]) > 3.0 * std::abs(d)) {
          slopes_[i] = 3.0 * d;
        }
        continue;
      }
      const double dl = delta[i - 1];
      const double dr = delta[i];
      if (dl * dr > 0.0) {
        const double sg = dr > 0.0 ? 1.0 : -1.0;
        const double lim = 3.0 * std::min(std::abs(dl), std::abs(dr));
        slopes_[i] = sg * std::min(std::max(0.0, sg * slopes_[i]), lim);
      } else if (dl == 0.0 || dr == 0.0) {
        slopes_[i] = 0.0;
      }
    }
  }

  head_p_ = 0.0;
  if (log_coords_ && values_[0] != 0.0 && values_[0] * values_[1] > 0.0) {
    head_p_ = std::log(values_[1] / values_[0]) / (u_[1] - u_[0]);
  }
}

double GridFunction::tail_value(double x) const {
  if (!decay_) return 0.0;
  const double xn = grid_.back();
  const double fn = values_.back();
  if (decay_->kind == DecayKind::power) return fn * std::pow(x / xn, -decay_->rate);
  return fn * std::exp(-decay_->rate * (std::pow(x, decay_->shape) - std::pow(xn, decay_->shape)));
}

double GridFunction::interpolate(double x) const {
  const auto& xs = grid_.points();
  if (x <= xs.front()) {
    if (x == xs.front()) return values_.front();
    if (log_coords_ && x > 0.0) return values_.front() * std::pow(x / xs.front(), head_p_);
    if (log_coords_ && head_p_ > 0.0) return 0.0;
    return values_.front();
  }
  if (x >= xs.back()) {
    if (x == xs.back()) return values_.back();
    return tail_value(x);
  }
  const double u = log_coords_ ? std::log(x) : x;
  std::size_t i = static_cast<std::size_t>(std::upper_bound(u_.begin(), u_.end(), u) - u_.begin());
  i = std::clamp<std::size_t>(i, 1, u_.size() - 1) - 1;
  const double h = u_[i + 1] - u_[i];
  const double t = (u - u_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[i] + h * h10 * slopes_[i] + h01 * values_[i + 1] + h * h11 * slopes_[i + 1];
}

double GridFunction::operator()(double x) const { return exact_ ? exact_(x) : interpolate(x); }

namespace {

// Trapezoid with the first Euler-Maclaurin correction on the nodes, plus
// closed-form head and tail pieces; `power` is 1 or 2.
double grid_integral(const GridFunction& f, int power) {
  const auto& x = f.grid().points();
  const auto& v = f.values();
  const std::size_t n = x.size();
  const bool logc = f.grid().spacing() == Spacing::logarithmic;

  auto g = [&](std::size_t i) {
    const double fi = power == 1 ? v[i] : v[i] * v[i];
    return logc ? fi * x[i] : fi;
  };
  // Derivative of g at the end nodes from one-sided differences.
  auto gslope = [&](bool left) {
    const std::size_t m = std::min<std::size_t>(4, n);
    std::vector<double> uu(m), gg(m);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t i = left ? j : n - 1 - j;
      uu[j] = logc ? std::log(x[i]) : x[i];
      gg[j] = g(i);
    }
    return one_sided_slope(uu.data(), gg.data(), m);
  };

  double sum = 0.0;
  double comp = 0.0;
  auto add = [&](double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = logc ? std::log(x[i + 1] / x[i]) : x[i + 1] - x[i];
    add(0.5 * h * (g(i) + g(i + 1)));
  }
  if (n >= 4) {
    const double h0 = logc ? std::log(x[1] / x[0]) : x[1] - x[0];
    const double hn = logc ? std::log(x[n - 1] / x[n - 2]) : x[n - 1] - x[n - 2];
    add(-(hn * hn * gslope(false) - h0 * h0 * gslope(true)) / 12.0);
  }

  // Head: f ~ f0 (x/x0)^p.
  const double x0 = x.front();
  if (x0 > 0.0) {
    const double f0 = power == 1 ? v.front() : v.front() * v.front();
    const double p = power * f.head_exponent();
    if (f0 != 0.0) {
      if (p <= -1.0) throw Error(ErrorCode::InvalidTail, "numerics", "head model not integrable at 0");
      add(f0 * x0 / (p + 1.0));
    }
  }
  // Tail from the decay hint.
  if (const auto& d = f.decay_hint(); d && v.back() != 0.0) {
    const double xn = x.back();
    const double fn = power == 1 ? v.back() : v.back() * v.back();
    if (d->kind == DecayKind::power) {
      const double r = power * d->rate;
      if (r <= 1.0) throw Error(ErrorCode::InvalidTail, "numerics", "power tail not integrable");
      add(fn * xn / (r - 1.0));
    } else {
      const double c = power * d->rate;
      const double beta = d->shape;
      const double w0 = c * std::pow(xn, beta);
      const double a = 1.0 / beta;
      add(fn * std::pow(c, -a) / beta * scaled_upper_gamma(a, w0));
    }
  }
  return sum;
}

}  // namespace

double integral(const GridFunction& f) { return grid_integral(f, 1); }

double l2_norm(const GridFunction& f) { return std::sqrt(std::max(0.0, grid_integral(f, 2))); }

double l2_relative_error(const GridFunction& f, const GridFunction& g) {
  // Node-only trapezoid: the error is measured on the output grid itself.
  const auto& x = g.grid().points();
  const bool logc = g.grid().spacing() == Spacing::logarithmic;
  double num = 0.0;
  double den = 0.0;
  double dprev = 0.0;
  double gprev = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = logc ? x[i] : 1.0;
    const double di = f(x[i]) - g.values()[i];
    const double dc = di * di * w;
    const double gc = g.values()[i] * g.values()[i] * w;
    if (i > 0) {
      const double h = logc ? std::log(x[i] / x[i - 1]) : x[i] - x[i - 1];
      num += 0.5 * h * (dc + dprev);
      den += 0.5 * h * (gc + gprev);
    }
    dprev = dc;
    gprev = gc;
  }
  return std::sqrt(num / den);
}

}  // namespace stablespec::numerics
