// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec/error.hpp"

namespace stablespec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InvalidTail: return "InvalidTail";
    case ErrorCode::NoDecayMetadata: return "NoDecayMetadata";
    case ErrorCode::OrderUnsupported: return "OrderUnsupported";
    case ErrorCode::CancellationOverflow: return "CancellationOverflow";
    case ErrorCode::OutOfStrip: return "OutOfStrip";
    case ErrorCode::NormalizationDefect: return "NormalizationDefect";
    case ErrorCode::ClassViolation: return "ClassViolation";
    case ErrorCode::TruncationFailure: return "TruncationFailure";
    case ErrorCode::AdmissibilityViolation: return "AdmissibilityViolation";
    case ErrorCode::UnclassifiedFunction: return "UnclassifiedFunction";
    case ErrorCode::TailTooHeavy: return "TailTooHeavy";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string module, const std::string& detail)
    : std::runtime_error(module + ": " + std::string(to_string(code)) + ": " + detail),
      code_(code),
      module_(std::move(module)) {}

}  // namespace stablespec
