// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "stablespec/numerics/grid.hpp"
#include "stablespec/specfun/alpha.hpp"

namespace stablespec::operators {

enum class OperatorKind { Lambda, LambdaAdjoint, H_alpha, calH, hat_calH };

struct OperatorSpec {
  OperatorKind kind;
  specfun::AlphaParams params;
  double quad_tol = 1e-10;
};

// coefficient * exp(-tau x^{alpha kappa})
struct StretchedTerm {
  double tau;
  double coefficient;
};

// Declared function class; the co-transform needs one of the non-plain tags.
struct FunctionClass {
  enum class Tag { L2_plain, E_alpha_kappa, WeightedL2, RangeLambda };

  Tag tag = Tag::L2_plain;
  double kappa = 1.0;
  double eta = 0.0;
  std::vector<StretchedTerm> terms;                         // E_alpha_kappa
  std::shared_ptr<const numerics::GridFunction> preimage;  // RangeLambda: f = Lambda(preimage)

  static FunctionClass l2();
  static FunctionClass e_alpha_kappa(double kappa, std::vector<StretchedTerm> terms);
  static FunctionClass weighted(double kappa, double eta);
  static FunctionClass range_lambda(numerics::GridFunction preimage);

  // E_alpha_kappa: 1 <= kappa < 1/(2-alpha), tau > 0. WeightedL2:
  // kappa >= alpha/(alpha-1), eta > 0. Throws ClassViolation.
  void validate(const specfun::AlphaParams& p) const;
};

// The analytic function sum_i c_i exp(-tau_i x^{alpha kappa}) of an
// E_alpha_kappa class, sampled on `grid` with its exact evaluator attached.
numerics::GridFunction stretched_family(const numerics::Grid& grid, const specfun::AlphaParams& p,
                                        const FunctionClass& cls);

// Lambda f(x) = int f(x y) lambda_alpha(y) dy
double apply_lambda(const numerics::GridFunction& f, double x, const OperatorSpec& spec);
// L2-adjoint: int g(y) lambda_alpha(x / y) dy / y
double apply_lambda_adjoint(const numerics::GridFunction& g, double x, const OperatorSpec& spec);

// int f(x) K(q x) dx with K = J, calJ or hatJ according to spec.kind.
double apply_H(const numerics::GridFunction& f, double q, const OperatorSpec& spec,
               const FunctionClass& cls = FunctionClass::l2());

// Any operator applied on every node of `out`. The tail hint of the result
// is `out_hint` when given, otherwise a power law fitted to the last nodes.
numerics::GridFunction apply(const OperatorSpec& spec, const numerics::GridFunction& f, const numerics::Grid& out,
                             const FunctionClass& cls = FunctionClass::l2(),
                             std::optional<numerics::DecayHint> out_hint = std::nullopt);

// Power-law tail fitted to the last two nodes; nullopt when the values are
// negligible, of mixed sign or not decaying.
std::optional<numerics::DecayHint> fit_power_tail(const numerics::Grid& grid, const std::vector<double>& values);

}  // namespace stablespec::operators
