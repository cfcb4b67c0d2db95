#include "covkit/errors.hpp"

namespace covkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::EmptyMeasure: return "empty_measure";
    case ErrorCode::GridTooLarge: return "grid_too_large";
    case ErrorCode::PrimeOutOfRange: return "prime_out_of_range";
    case ErrorCode::ZeroWeightAtom: return "zero_weight_atom";
    case ErrorCode::SymbolUndefinedAtAtom: return "symbol_undefined_at_atom";
    case ErrorCode::MissingGridValue: return "missing_grid_value";
    case ErrorCode::FMuIntegralZero: return "f_mu_integral_zero";
    case ErrorCode::RankDeficientPencil: return "rank_deficient_pencil";
    case ErrorCode::ExpectationYZero: return "expectation_y_zero";
    case ErrorCode::SchemaError: return "schema_error";
    case ErrorCode::IoError: return "io_error";
  }
  return "unknown";
}

}  // namespace covkit
