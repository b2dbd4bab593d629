#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kohn {

enum class ErrorCode {
  DegenerateWeight,
  PreconditionFailed,
  Unsupported,
  OutOfRegion,
  EmptySet,
  TruncationTooSmall,
  NotHolomorphic,
  ZeroDenominator,
  TailBoundViolated,
  ZeroMass,
  NotAdmissible,
  ParseError,
  NegativeExponent,
  DuplicatePoint,
  InvalidArgument,
  Internal,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kohn
