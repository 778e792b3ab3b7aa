#include "spineneck/error.hpp"

namespace spineneck {

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::ZeroGradient:
    case ErrorCode::AllTracesFailed:
    case ErrorCode::NoCrossing:
    case ErrorCode::NoContour:
    case ErrorCode::AllCandidatesFailed:
    case ErrorCode::FitFailure:
      return ErrorCategory::Numerical;
    case ErrorCode::IoError:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Validation;
  }
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConstantImage: return "ConstantImage";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::FullMask: return "FullMask";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::SourceOutOfBounds: return "SourceOutOfBounds";
    case ErrorCode::EmptyBoundary: return "EmptyBoundary";
    case ErrorCode::HeadInsideShaft: return "HeadInsideShaft";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::GeometryError: return "GeometryError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZeroGradient: return "ZeroGradient";
    case ErrorCode::AllTracesFailed: return "AllTracesFailed";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::NoContour: return "NoContour";
    case ErrorCode::AllCandidatesFailed: return "AllCandidatesFailed";
    case ErrorCode::FitFailure: return "FitFailure";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Validation: return 2;
    case ErrorCategory::Numerical: return 3;
    case ErrorCategory::Io: return 4;
  }
  return 1;
}

Error Error::with_stage(std::string_view stage) const {
  return Error(code_, std::string(stage) + ": " + what());
}

}  // namespace spineneck
