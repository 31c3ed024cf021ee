#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opcomp {

enum class ErrorCode {
  NotSquare,
  Singular,
  ShapeMismatch,
  TooBig,
  DimMismatch,
  Infeasible,
  TNotInvertible,
  NotEmbeddable,
  HypothesisViolated,
  NotInvertible,
  UnsatisfiableBounds,
  Format,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::TooBig: return "TooBig";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::TNotInvertible: return "TNotInvertible";
    case ErrorCode::NotEmbeddable: return "NotEmbeddable";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::UnsatisfiableBounds: return "UnsatisfiableBounds";
    case ErrorCode::Format: return "Format";
  }
  return "Unknown";
}

/// Base class for every error raised by the library. The code is stable and
/// meant for programmatic dispatch; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace opcomp
