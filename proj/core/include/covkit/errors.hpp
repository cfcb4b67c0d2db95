#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covkit {

/// Machine-readable failure categories. The CLI prints them verbatim via
/// to_string(), so the spellings are part of the report contract.
enum class ErrorCode {
  InvalidArgument,
  EmptyMeasure,
  GridTooLarge,
  PrimeOutOfRange,
  ZeroWeightAtom,
  SymbolUndefinedAtAtom,
  MissingGridValue,
  FMuIntegralZero,
  RankDeficientPencil,
  ExpectationYZero,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace covkit
