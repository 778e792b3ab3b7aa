#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spineneck {

enum class ErrorCode {
  // input validation
  ConstantImage,
  EmptyMask,
  FullMask,
  DimensionMismatch,
  BadParameter,
  SourceOutOfBounds,
  EmptyBoundary,
  HeadInsideShaft,
  EmptySet,
  GeometryError,
  ParseError,
  // numerical failures
  NoConvergence,
  ZeroGradient,
  AllTracesFailed,
  NoCrossing,
  NoContour,
  AllCandidatesFailed,
  FitFailure,
  // filesystem
  IoError,
};

enum class ErrorCategory { Validation, Numerical, Io };

ErrorCategory category_of(ErrorCode code);
std::string_view to_string(ErrorCode code);

// Process exit status for an error category: 2 validation, 3 numerical, 4 I/O.
int exit_code_for(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }
  ErrorCategory category() const { return category_of(code_); }

  // Prefixes the message with the pipeline stage that raised it.
  Error with_stage(std::string_view stage) const;

 private:
  ErrorCode code_;
};

// Non-fatal diagnostics collected by operations that drop or clamp work.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
  if (sink != nullptr) sink->push_back(std::move(message));
}

}  // namespace spineneck
