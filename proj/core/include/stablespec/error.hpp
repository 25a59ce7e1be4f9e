// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stablespec {

enum class ErrorCode {
  InvalidArgument,
  NonConvergence,
  InvalidTail,
  NoDecayMetadata,
  OrderUnsupported,
  CancellationOverflow,
  OutOfStrip,
  NormalizationDefect,
  ClassViolation,
  TruncationFailure,
  AdmissibilityViolation,
  UnclassifiedFunction,
  TailTooHeavy,
  BudgetExceeded,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every numeric failure carries the module it came from so the CLI can
// report "<module>: <code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace stablespec
