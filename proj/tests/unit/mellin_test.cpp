// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "stablespec/error.hpp"
#include "stablespec/mellin/catalogue.hpp"
#include "stablespec/mellin/density.hpp"
#include "stablespec/numerics/grid.hpp"

using namespace stablespec;
using mellin::cplx;
using specfun::AlphaParams;

// tests/oracles/mellin_oracle.py, 30-digit inversion.
TEST(MellinOracle, Densities) {
  struct Row {
    double a, y, lambda, x;
  };
  const Row rows[] = {{1.5, 0.05, 0.304832316862126261, 0.385581468962373081},
                      {1.5, 0.3, 0.954086813361733863, 0.445010683063799157},
                      {1.5, 1, 0.539567024064902548, 0.525852113880167369},
                      {1.5, 2, 7.90686721420238023e-6, 0.248337361555867516},
                      {1.1, 0.05, 0.82198949765141221, 0.103740807884765975},
                      {1.1, 0.3, 0.807457482513791865, 0.167374975546620964},
                      {1.1, 1, 0.422048908071230335, 1.06655704857969356},
                      {1.1, 2, 0.118296077584126383, 0.0}};
  for (const auto& r : rows) {
    const AlphaParams p(r.a);
    EXPECT_NEAR(mellin::lambda_alpha(r.y, p), r.lambda, 1e-11) << r.a << " " << r.y;
    EXPECT_NEAR(mellin::lambda_X(r.y, p), r.x, 1e-11) << r.a << " " << r.y;
  }
}

TEST(Mellin, FactorizationOnCriticalLine) {
  for (double a : {1.1, 1.5, 1.9}) {
    const AlphaParams p(a);
    for (double b = -50.0; b <= 50.0; b += 0.37) {
      const cplx s(0.5, b);
      const cplx lhs = mellin::symbol("X", p, s) * mellin::symbol("Lambda", p, s);
      const cplx rhs = mellin::symbol("G", p, s);
      EXPECT_LT(std::abs(lhs - rhs) / std::abs(rhs), 1e-12) << a << " " << b;
    }
  }
}

TEST(Mellin, LambdaIsAProbabilityTransform) {
  const AlphaParams p(1.4);
  EXPECT_NEAR(std::abs(mellin::symbol("Lambda", p, cplx(1.0, 0.0)) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(mellin::symbol("X", p, cplx(1.0, 0.0)) - 1.0), 0.0, 1e-14);
}

TEST(Mellin, GammaRatioReflection) {
  const AlphaParams p(1.5);
  const auto r = mellin::ratio_Lambda(p);
  const auto rr = r.reflected();
  const cplx s(0.3, 2.0);
  EXPECT_LT(std::abs(rr(s) - r(1.0 - s)), 1e-13);
  const auto prod = r * rr;
  EXPECT_LT(std::abs(prod(s) - r(s) * r(1.0 - s)), 1e-13);
}

TEST(Mellin, OutOfStripThrows) {
  const AlphaParams p(1.5);
  const auto sym = mellin::make_symbol("g", p);
  EXPECT_FALSE(sym.in_strip(sym.strip_hi + 1.0));
  try {
    sym(cplx(sym.strip_hi + 1.0, 0.0));
    FAIL() << "expected OutOfStrip";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfStrip);
  }
}

TEST(Mellin, InversionRecoversClosedForm) {
  const AlphaParams p(1.5);
  const auto sym = mellin::make_symbol("G", p);
  const std::vector<double> ys{0.1, 0.7, 1.5, 3.0};
  const auto v = mellin::invert(sym, ys, 0.5, 1e-13);
  for (std::size_t i = 0; i < ys.size(); ++i) EXPECT_NEAR(v[i], mellin::lambda_G(ys[i], p), 1e-11);
}

TEST(Mellin, DensitiesAreNormalized) {
  for (double a : {1.1, 1.5, 1.9}) {
    const AlphaParams p(a);
    for (const char* name : {"lambda_alpha", "lambda_X", "lambda_G"}) {
      const auto d = mellin::density(name, p, numerics::Grid::default_grid());
      EXPECT_LT(d.normalization_defect, 1e-6) << name << " " << a;
      EXPECT_LT(d.clip_mass, 1e-9) << name << " " << a;
      for (double v : d.samples.values()) EXPECT_GE(v, 0.0);
    }
  }
}

TEST(Mellin, UnknownSymbolIsRejected) {
  EXPECT_THROW(mellin::make_symbol("nope", AlphaParams(1.5)), Error);
}

TEST(Mellin, PhiAlphaAtOne) {
  // Gamma(alpha + 1) / (Gamma(1) / alpha) = alpha Gamma(alpha + 1)
  const AlphaParams p(1.5);
  EXPECT_NEAR(mellin::phi_alpha(1.0, p), 1.5 * std::tgamma(2.5), 1e-13);
}
