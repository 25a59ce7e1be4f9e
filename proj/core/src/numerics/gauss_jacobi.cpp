// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/numerics/gauss_jacobi.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "stablespec/error.hpp"

namespace stablespec::numerics {

GaussRule gauss_jacobi(int n, double a, double b) {
  if (n < 1 || !(a > -1.0) || !(b > -1.0))
    throw Error(ErrorCode::InvalidArgument, "numerics", "Gauss-Jacobi needs n >= 1 and a, b > -1");
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    t(k, k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double k1 = k + 1.0;
      const double s1 = 2.0 * k1 + ab;
      const double beta = (k == 0) ? 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0))
                                   : 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + ab) /
                                         (s1 * s1 * (s1 + 1.0) * (s1 - 1.0));
      t(k, k + 1) = t(k + 1, k) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(ab + 2.0));
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = eig.eigenvalues()(i);
    const double v = eig.eigenvectors()(0, i);
    r.weights[i] = mu0 * v * v;
  }
  return r;
}

GaussRule gauss_jacobi_unit(int n, double a, double b) {
  GaussRule r = gauss_jacobi(n, a, b);
  const double scale = std::pow(0.5, a + b + 1.0);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = 0.5 * (r.nodes[i] + 1.0);
    r.weights[i] *= scale;
  }
  return r;
}

}  // namespace stablespec::numerics
