#include "kohn/error.hpp"

namespace kohn {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateWeight: return "DegenerateWeight";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::OutOfRegion: return "OutOfRegion";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::NotHolomorphic: return "NotHolomorphic";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::TailBoundViolated: return "TailBoundViolated";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace kohn
