#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "covkit/types.hpp"

namespace covkit {

/// Exponent vector of a monomial; also the element type of (N_0^d, +).
using MultiIndex = std::vector<unsigned>;

/// A character (non-zero multiplicative function) identified with its
/// parameter: z in C^d for (N_0^d, +), z in C^L for (N, *) truncated to the
/// first L primes, z in the closed right half-plane for ([0, inf), +).
using CharacterPoint = std::vector<Complex>;

enum class SemigroupTag { NatAdd, NatMult, HalfLine };

class SemigroupKind {
 public:
  static SemigroupKind nat_add(int dimension);
  static SemigroupKind nat_mult(int primes);
  static SemigroupKind half_line();

  SemigroupTag tag() const noexcept { return tag_; }

  /// d for NatAdd, L for NatMult, 1 for HalfLine: the length of a
  /// CharacterPoint.
  std::size_t point_dim() const noexcept { return static_cast<std::size_t>(rank_); }

  bool operator==(const SemigroupKind&) const = default;

 private:
  SemigroupKind(SemigroupTag tag, int rank) : tag_(tag), rank_(rank) {}

  SemigroupTag tag_;
  int rank_;
};

/// An element of one of the supported semigroups. Which alternative is held
/// is fixed by the SemigroupKind the element is used with.
class Element {
 public:
  static Element multi_index(MultiIndex m) { return Element(Value(std::move(m))); }
  static Element integer(std::uint64_t n) { return Element(Value(n)); }
  static Element real(double s) { return Element(Value(s)); }

  bool is_multi_index() const { return std::holds_alternative<MultiIndex>(value_); }
  bool is_integer() const { return std::holds_alternative<std::uint64_t>(value_); }
  bool is_real() const { return std::holds_alternative<double>(value_); }

  const MultiIndex& as_multi_index() const { return std::get<MultiIndex>(value_); }
  std::uint64_t as_integer() const { return std::get<std::uint64_t>(value_); }
  double as_real() const { return std::get<double>(value_); }

  friend bool operator==(const Element& a, const Element& b) { return a.value_ == b.value_; }
  friend bool operator<(const Element& a, const Element& b) { return a.value_ < b.value_; }

 private:
  using Value = std::variant<MultiIndex, std::uint64_t, double>;
  explicit Element(Value v) : value_(std::move(v)) {}

  Value value_;
};

std::string to_string(const Element& e);

/// Throws InvalidArgument when `e` is not an element of `kind`, and
/// PrimeOutOfRange when a NatMult element uses a prime beyond p_L.
void validate_element(const SemigroupKind& kind, const Element& e);

/// Throws InvalidArgument on dimension mismatch or, for HalfLine, Re z < 0.
void validate_point(const SemigroupKind& kind, const CharacterPoint& z);

Element identity(const SemigroupKind& kind);

/// Semigroup operation. NatMult products that overflow 64 bits throw
/// GridTooLarge.
Element combine(const SemigroupKind& kind, const Element& a, const Element& b);

/// The j-th prime, zero based: nth_prime(0) == 2.
std::uint64_t nth_prime(int j);

/// Exponent vector of n over the first `primes` primes.
MultiIndex kappa(std::uint64_t n, int primes);

/// z^m = prod_i z_i^{m_i} with 0^0 = 1.
Complex monomial(const CharacterPoint& z, const MultiIndex& m);

/// rho_z(s): z^m, z^{kappa(n)} or exp(-s z).
Complex char_eval(const SemigroupKind& kind, const CharacterPoint& z, const Element& s);

}  // namespace covkit
