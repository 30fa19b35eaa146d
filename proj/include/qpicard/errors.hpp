#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpicard {

enum class ErrorCode {
  ZeroDivision,
  NotAZeroDivisor,
  ZeroInput,
  InvalidScale,
  BoundaryZero,
  NonConvergence,
  Unreachable,
  DuplicatePoints,
  DegeneratePlane,
  NotGeneralPosition,
  SingularBasis,
  InvalidAlpha,
  InvalidArgument,
  MalformedInput,
};

constexpr std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDivision: return "ZeroDivision";
    case ErrorCode::NotAZeroDivisor: return "NotAZeroDivisor";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::InvalidScale: return "InvalidScale";
    case ErrorCode::BoundaryZero: return "BoundaryZero";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::NotGeneralPosition: return "NotGeneralPosition";
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Domain failure carrying a machine-readable code.
///
/// MalformedInput is reserved for documents that do not match a schema;
/// every other code signals a well-formed request the mathematics rejects.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qpicard
