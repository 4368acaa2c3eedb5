#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace avk {

enum class ErrorCode {
  kParse,
  kEmptyMatrix,
  kNotExact,
  kJacobiViolation,
  kFormNotInvariant,
  kNormalizationImpossible,
  kNonIntegerDualCoxeter,
  kNotDominantIntegral,
  kPositiveFactorInNegativeMode,
  kBoundsTooLargeForMemory,
  kTruncationEscape,
  kInsufficientHeadroom,
  kNotDominant,
  kLevelIsMinusDualCoxeter,
  kNonNegativePart,
  kNotDominantContext,
  kBoundTooSmall,
  kZeroLoopWeight,
  kPresetUnknown,
  kVerdictMismatch,
  kIOFailure,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// All library failures surface as this exception; `code()` is stable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace avk
