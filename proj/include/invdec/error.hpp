#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace invdec {

/// Stable error enumeration. The CLI prints these names verbatim, so
/// renaming an enumerator is a breaking change.
enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  NotInAlgebra,
  NotInGroup,
  NotNormal,
  NotDiagonalizable,
  Singular,
  DegenerateLambdas,
  NonCommutingParts,
  NotSimpleFactor,
  AmbiguousDirection,
  MissingDirection,
  FactorizationFailed,
  ZeroMatrix,
  NotUnitary,
  InternalConsistency,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DegenerateLambdas: return "DegenerateLambdas";
    case ErrorCode::NonCommutingParts: return "NonCommutingParts";
    case ErrorCode::NotSimpleFactor: return "NotSimpleFactor";
    case ErrorCode::AmbiguousDirection: return "AmbiguousDirection";
    case ErrorCode::MissingDirection: return "MissingDirection";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

/// True for codes caused by the caller's input rather than by numerics.
constexpr bool is_input_error(ErrorCode code) {
  return code == ErrorCode::InvalidInput ||
         code == ErrorCode::DimensionMismatch ||
         code == ErrorCode::NotInAlgebra || code == ErrorCode::NotInGroup ||
         code == ErrorCode::NotUnitary;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace invdec
