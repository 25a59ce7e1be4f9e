// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/mellin/density.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "stablespec/error.hpp"
#include "stablespec/mellin/catalogue.hpp"
#include "stablespec/numerics/summation.hpp"
#include "stablespec/numerics/vertical_line.hpp"

namespace stablespec::mellin {
namespace {

// Largest summand accepted before the series result is distrusted; keeps
// the absolute rounding error near 1e-14.
constexpr double kMaxTerm = 100.0;

// log|Gamma(x)| and its sign; nullopt at the poles.
std::optional<std::pair<double, int>> log_gamma_signed(double x) {
  if (x <= 0.0 && x == std::floor(x)) return std::nullopt;
  int sign = 1;
  const double l = boost::math::lgamma(x, &sign);
  return std::make_pair(l, sign);
}

struct SeriesValue {
  double value = 0.0;
  double max_term = 0.0;
  bool converged = false;
};

// Residues of M_Lambda at s = 1 - alpha(m+1) and s = -alpha m.
SeriesValue lambda_alpha_series(double y, const specfun::AlphaParams& p) {
  SeriesValue r;
  if (y == 0.0) {
    r.converged = true;
    return r;
  }
  const double a = p.alpha;
  const double ly = std::log(y);
  const double lgi = std::lgamma(1.0 / a);
  numerics::CompensatedSum<double> sum;
  int small = 0;
  for (int m = 0; m < 3000; ++m) {
    double mag_m = 0.0;
    // family A
    {
      const auto g1 = log_gamma_signed(1.0 / a - m - 1.0);
      const auto g2 = log_gamma_signed(1.0 - a * (m + 1.0));
      if (g1 && g2) {
        const double l = std::log(a) - std::lgamma(m + 1.0) + g1->first - lgi - g2->first + (a * (m + 1.0) - 1.0) * ly;
        const double t = ((m % 2 == 0) ? 1.0 : -1.0) * g1->second * g2->second * std::exp(l);
        sum.add(t);
        mag_m = std::max(mag_m, std::abs(t));
      }
    }
    // family B
    if (m >= 1) {
      const auto g1 = log_gamma_signed(1.0 - m - 1.0 / a);
      const auto g2 = log_gamma_signed(-a * m);
      if (g1 && g2) {
        const double l = std::log(a) - std::lgamma(m + 1.0) + g1->first - lgi - g2->first + a * m * ly;
        const double t = ((m % 2 == 0) ? 1.0 : -1.0) * g1->second * g2->second * std::exp(l);
        sum.add(t);
        mag_m = std::max(mag_m, std::abs(t));
      }
    }
    r.max_term = std::max(r.max_term, mag_m);
    if (!std::isfinite(r.max_term) || r.max_term > 1e30) return r;
    if (m > 4 && mag_m < 1e-18 * std::max(std::abs(sum.value()), 1e-300) && mag_m < r.max_term) {
      if (++small >= 3) {
        r.converged = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  r.value = sum.value();
  return r;
}

// Residues of M_X at s = -m.
SeriesValue lambda_X_series(double y, const specfun::AlphaParams& p) {
  SeriesValue r;
  const double a = p.alpha;
  if (y == 0.0) {
    r.value = 1.0 / std::tgamma(1.0 - 1.0 / a);
    r.max_term = std::abs(r.value);
    r.converged = true;
    return r;
  }
  const double ly = std::log(y);
  numerics::CompensatedSum<double> sum;
  int small = 0;
  for (int m = 0; m < 3000; ++m) {
    const auto g = log_gamma_signed(1.0 - (m + 1.0) / a);
    double mag = 0.0;
    if (g) {
      const double t = ((m % 2 == 0) ? 1.0 : -1.0) * g->second * std::exp(m * ly - std::lgamma(m + 1.0) - g->first);
      sum.add(t);
      mag = std::abs(t);
    }
    r.max_term = std::max(r.max_term, mag);
    if (!std::isfinite(r.max_term) || r.max_term > 1e30) return r;
    if (m > 4 && mag < 1e-18 * std::max(std::abs(sum.value()), 1e-300) && mag < r.max_term) {
      if (++small >= 3) {
        r.converged = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  r.value = sum.value();
  return r;
}

template <class Series>
std::vector<double> evaluate(const std::vector<double>& ys, const specfun::AlphaParams& p, Series series,
                             const MellinSymbol& sym) {
  std::vector<double> out(ys.size(), 0.0);
  std::vector<double> rest;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!(ys[i] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "mellin", "density argument must be >= 0");
    const SeriesValue s = series(ys[i], p);
    if (s.converged && s.max_term < kMaxTerm) {
      out[i] = s.value;
    } else {
      rest.push_back(ys[i]);
      idx.push_back(i);
    }
  }
  if (!rest.empty()) {
    const std::vector<double> inv = invert(sym, rest, 0.5, 1e-13);
    for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = inv[j];
  }
  return out;
}

}  // namespace

std::vector<double> invert(const MellinSymbol& symbol, const std::vector<double>& xs, double a, double tol) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& r : numerics::integrate_vertical_line(symbol, xs, a, tol)) out.push_back(r.real.value);
  return out;
}

std::vector<double> lambda_alpha(const std::vector<double>& ys, const specfun::AlphaParams& p) {
  return evaluate(ys, p, lambda_alpha_series, make_symbol("Lambda", p));
}

double lambda_alpha(double y, const specfun::AlphaParams& p) { return lambda_alpha(std::vector<double>{y}, p)[0]; }

std::vector<double> lambda_X(const std::vector<double>& ys, const specfun::AlphaParams& p) {
  return evaluate(ys, p, lambda_X_series, make_symbol("X", p));
}

double lambda_X(double y, const specfun::AlphaParams& p) { return lambda_X(std::vector<double>{y}, p)[0]; }

double lambda_G(double y, const specfun::AlphaParams& p) {
  if (!(y >= 0.0)) throw Error(ErrorCode::InvalidArgument, "mellin", "density argument must be >= 0");
  return std::exp(-std::pow(y, p.alpha)) / p.gamma_one_plus;
}

Density density(std::string_view name, const specfun::AlphaParams& p, const numerics::Grid& grid) {
  const auto& ys = grid.points();
  std::vector<double> v;
  std::optional<numerics::DecayHint> tail;
  const double a = p.alpha;
  if (name == "lambda_alpha") {
    v = lambda_alpha(ys, p);
    tail = numerics::DecayHint::stretched(1.0, a / (2.0 - a));
  } else if (name == "lambda_X") {
    v = lambda_X(ys, p);
    tail = numerics::DecayHint::stretched(1.0, a / (a - 1.0));
  } else if (name == "lambda_G") {
    v.reserve(ys.size());
    for (double y : ys) v.push_back(lambda_G(y, p));
    tail = numerics::DecayHint::stretched(1.0, a);
  } else {
    std::ostringstream os;
    os << "unknown density '" << name << "' (expected lambda_alpha, lambda_X or lambda_G)";
    throw Error(ErrorCode::InvalidArgument, "mellin", os.str());
  }

  double clipped_min = 0.0;
  std::vector<double> negative(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) {
      clipped_min = std::min(clipped_min, v[i]);
      negative[i] = -v[i];
      v[i] = 0.0;
    }
  }
  if (clipped_min < -1e-9) {
    std::ostringstream os;
    os << name << ": inversion noise " << clipped_min << " below -1e-9";
    throw Error(ErrorCode::NormalizationDefect, "mellin", os.str());
  }
  Density d{std::string(name), numerics::GridFunction(grid, v, tail)};
  d.clip_mass = numerics::integral(numerics::GridFunction(grid, negative));
  d.normalization_defect = std::abs(1.0 - numerics::integral(d.samples));
  if (d.normalization_defect > 1e-6) {
    std::ostringstream os;
    os << name << ": mass on the grid deviates from 1 by " << d.normalization_defect;
    throw Error(ErrorCode::NormalizationDefect, "mellin", os.str());
  }
  return d;
}

}  // namespace stablespec::mellin
