// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/specfun/alpha.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "stablespec/error.hpp"

namespace stablespec::specfun {

AlphaParams::AlphaParams(double a) : alpha(a) {
  if (!(a > 1.0 && a < 2.0)) {
    std::ostringstream os;
    os << "alpha must lie in (1, 2), got " << a;
    throw Error(ErrorCode::InvalidArgument, "specfun", os.str());
  }
  pi_alpha = boost::math::constants::pi<double>() / a;
  cos_pa = std::cos(pi_alpha);
  sin_pa = std::sin(pi_alpha);
  gamma_inv_alpha = std::tgamma(1.0 / a);
  gamma_one_plus = std::tgamma(1.0 + 1.0 / a);
}

}  // namespace stablespec::specfun
