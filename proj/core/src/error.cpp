#include "avk/error.hpp"

namespace avk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kNotExact: return "NotExact";
    case ErrorCode::kJacobiViolation: return "JacobiViolation";
    case ErrorCode::kFormNotInvariant: return "FormNotInvariant";
    case ErrorCode::kNormalizationImpossible: return "NormalizationImpossible";
    case ErrorCode::kNonIntegerDualCoxeter: return "NonIntegerDualCoxeter";
    case ErrorCode::kNotDominantIntegral: return "NotDominantIntegral";
    case ErrorCode::kPositiveFactorInNegativeMode: return "PositiveFactorInNegativeMode";
    case ErrorCode::kBoundsTooLargeForMemory: return "BoundsTooLargeForMemory";
    case ErrorCode::kTruncationEscape: return "TruncationEscape";
    case ErrorCode::kInsufficientHeadroom: return "InsufficientHeadroom";
    case ErrorCode::kNotDominant: return "NotDominant";
    case ErrorCode::kLevelIsMinusDualCoxeter: return "LevelIsMinusDualCoxeter";
    case ErrorCode::kNonNegativePart: return "NonNegativePart";
    case ErrorCode::kNotDominantContext: return "NotDominantContext";
    case ErrorCode::kBoundTooSmall: return "BoundTooSmallWarning";
    case ErrorCode::kZeroLoopWeight: return "ZeroLoopWeight";
    case ErrorCode::kPresetUnknown: return "PresetUnknown";
    case ErrorCode::kVerdictMismatch: return "VerdictMismatch";
    case ErrorCode::kIOFailure: return "IOFailure";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace avk
