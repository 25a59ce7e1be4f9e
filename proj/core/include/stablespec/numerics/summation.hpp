// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace stablespec::numerics {

// Neumaier's variant of compensated summation.
template <class T>
class CompensatedSum {
 public:
  explicit CompensatedSum(bool enabled = true) : enabled_(enabled) {}

  void add(T v) {
    if (!enabled_) {
      sum_ += v;
      return;
    }
    const T t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }

  T value() const { return sum_ + comp_; }

 private:
  T sum_ = 0;
  T comp_ = 0;
  bool enabled_;
};

}  // namespace stablespec::numerics
