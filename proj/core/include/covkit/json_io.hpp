#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "covkit/applications.hpp"
#include "covkit/laplace.hpp"
#include "covkit/pdbv.hpp"
#include "covkit/toeplitz.hpp"

// JSON forms of the domain types. Complex numbers are [re, im] pairs,
// character points are arrays of complex numbers, and elements are written
// as an integer array (nat_add), an integer (nat_mult) or a number
// (half_line). Parsers throw Error(SchemaError) on malformed input.
namespace covkit::json {

using Json = nlohmann::ordered_json;

Complex parse_complex(const Json& j);
Json to_json(Complex c);

SemigroupKind parse_semigroup(const Json& j);
Json to_json(const SemigroupKind& kind);

Element parse_element(const SemigroupKind& kind, const Json& j);
Json to_json(const Element& e);

CharacterPoint parse_point(const Json& j);
Json point_to_json(const CharacterPoint& z);

MultiIndex parse_multi_index(const Json& j);

/// {"atoms":[{"point":[[re,im],...],"weight":[re,im]},...]}
AtomicMeasure parse_measure(const SemigroupKind& kind, const Json& j);
Json to_json(const AtomicMeasure& mu);

/// {"kind":"const","value":[re,im]}
/// {"kind":"poly","terms":[{"m":[...],"c":[re,im]},...]}
/// {"kind":"table","entries":[{"point":[...],"value":[re,im]},...]}
Symbol parse_symbol(const Json& j);
Json to_json(const Symbol& f);

/// {"grid":[e,...],"values":[{"s":e,"t":e,"v":[re,im]},...]}
PairFunction parse_pair_function(const SemigroupKind& kind, const Json& j);
Json to_json(const PairFunction& f);

/// [{"a":e,"b":e,"coeff":[re,im]},...]
ShiftCombination parse_shift_combination(const SemigroupKind& kind, const Json& j);
Json to_json(const ShiftCombination& op);

/// {"outcomes":[{"p":0.5,"x":[[re,im],...],"y":[re,im]},...]}
DiscreteRandomVector parse_random_vector(const Json& j);
Json to_json(const DiscreteRandomVector& rv);

/// [{"m":[...],"n":[...],"a":[re,im]},...], the same list under
/// "coefficients", or {"bergman":N}.
KernelCoefficients parse_kernel(const Json& j);
Json to_json(const KernelCoefficients& k);

/// [{"m":[...],"b":[re,im]},...]
SeriesCoefficients parse_series(const Json& j);
Json series_to_json(const SeriesCoefficients& b);

Json table_to_json(const ElementTable& table);

/// Covariance report: "verdict" first, then verdict-specific fields.
Json to_json(const CovarianceVerdict& verdict);

/// Deterministic text: keys in insertion order, doubles with 17 significant
/// digits, non-finite doubles as null, two-space indentation.
std::string dump(const Json& j);

}  // namespace covkit::json
