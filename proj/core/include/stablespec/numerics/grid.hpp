// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace stablespec::numerics {

enum class Spacing { linear, logarithmic };

class Grid {
 public:
  Grid(std::vector<double> points, Spacing spacing);

  static Grid linear(double lo, double hi, std::size_t n);
  static Grid logarithmic(double lo, double hi, std::size_t n);
  // 512 logarithmic points on [1e-4, 50].
  static Grid default_grid();

  const std::vector<double>& points() const noexcept { return points_; }
  Spacing spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

 private:
  std::vector<double> points_;
  Spacing spacing_;
};

enum class DecayKind { power, stretched_exponential };

// power:                 |f(x)| ~ C x^{-rate}
// stretched_exponential: |f(x)| ~ C exp(-rate x^shape)
struct DecayHint {
  DecayKind kind = DecayKind::power;
  double rate = 2.0;
  double shape = 1.0;

  static DecayHint power(double p) { return {DecayKind::power, p, 1.0}; }
  static DecayHint stretched(double c, double beta) {
    return {DecayKind::stretched_exponential, c, beta};
  }
};

// Sampled function on a positive grid. Between nodes: C^1 cubic Hermite
// interpolation (spline slopes with Hyman's monotonicity filter), in ln x on
// logarithmic grids. Below the first node a power law through the first two
// samples; beyond the last node the decay hint (zero without a hint).
class GridFunction {
 public:
  using Fn = std::function<double(double)>;

  GridFunction(Grid grid, std::vector<double> values,
               std::optional<DecayHint> decay = std::nullopt);

  static GridFunction sample(const Grid& grid, const Fn& f,
                             std::optional<DecayHint> decay = std::nullopt);

  // Same samples, but evaluation calls `f` directly. Used for named families
  // whose closed form is known, so operators avoid interpolation error.
  static GridFunction analytic(const Grid& grid, Fn f,
                               std::optional<DecayHint> decay = std::nullopt);

  double operator()(double x) const;
  double interpolate(double x) const;

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::optional<DecayHint>& decay_hint() const noexcept { return decay_; }
  bool has_exact() const noexcept { return static_cast<bool>(exact_); }
  GridFunction sampled_only() const;

  // Exponent p of the head model f(x) ~ f(x0) (x/x0)^p.
  double head_exponent() const noexcept { return head_p_; }

 private:
  void build();
  double tail_value(double x) const;

  Grid grid_;
  std::vector<double> values_;
  std::optional<DecayHint> decay_;
  Fn exact_;
  std::vector<double> u_;       // ln x or x
  std::vector<double> slopes_;  // d values / du
  double head_p_ = 0.0;
  bool log_coords_ = false;
};

// Integral over (0, inf) of a GridFunction (or its square) in log
// coordinates including head and tail models.
double integral(const GridFunction& f);
double l2_norm(const GridFunction& f);
// ||f - g|| / ||g|| with both evaluated on the nodes of g's grid.
double l2_relative_error(const GridFunction& f, const GridFunction& g);

}  // namespace stablespec::numerics
