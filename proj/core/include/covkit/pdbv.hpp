#pragma once

#include <span>
#include <vector>

#include "covkit/pair_function.hpp"

namespace covkit {

struct ShiftTerm {
  ElementPair shift;
  Complex coeff;
};

/// Finite combination sum alpha_(a,b) E_(a,b) of shift operators,
/// (E_(a,b) f)(s, t) = f(as, bt).
class ShiftCombination {
 public:
  ShiftCombination() = default;
  explicit ShiftCombination(std::vector<ShiftTerm> terms) : terms_(std::move(terms)) {}

  static ShiftCombination identity(const SemigroupKind& kind);
  static ShiftCombination shift(ElementPair ab, Complex coeff = {1.0, 0.0});

  const std::vector<ShiftTerm>& terms() const noexcept { return terms_; }

  /// Like terms collected, exact zeros dropped, shifts sorted.
  ShiftCombination normalized() const;

  ShiftCombination& operator+=(const ShiftCombination& other);
  friend ShiftCombination operator+(ShiftCombination a, const ShiftCombination& b) { return a += b; }
  friend ShiftCombination operator*(Complex c, ShiftCombination op);

  /// Equality as elements of the operator algebra: exact coefficient
  /// comparison after normalization.
  friend bool operator==(const ShiftCombination& a, const ShiftCombination& b);

 private:
  std::vector<ShiftTerm> terms_;
};

/// Product in the operator algebra: E_(a,b) E_(c,d) = E_(ac,bd).
ShiftCombination compose(const SemigroupKind& kind, const ShiftCombination& a, const ShiftCombination& b);

/// (op f)(at). Throws MissingGridValue when f is not tabulated at a probed
/// pair.
Complex apply_shift(const ShiftCombination& op, const PairFunction& f, const ElementPair& at);

/// Conjugated coefficients with swapped pair components.
ShiftCombination adjoint(const ShiftCombination& op);

/// T_(a,sigma) = 1/4 (I + sigma/2 E_a + conj(sigma)/2 E_(a*)), a* = (b, a),
/// for sigma in {1, -1, i, -i}; anything else throws InvalidArgument.
ShiftCombination admissible_generator(const SemigroupKind& kind, const ElementPair& a, Complex sigma);

/// The four generators T_(a,sigma); they sum to the identity.
std::vector<ShiftCombination> admissible_family(const SemigroupKind& kind, const ElementPair& a);

/// ||f||_Lambda = sum over T in Lambda of |(T f)(e, e)|.
double bv_norm(const PairFunction& f, std::span<const ShiftCombination> lambda);

struct PositiveDefiniteResult {
  double min_eigenvalue;
  double trace;
  /// max |G - G^*| before symmetrization.
  double asymmetry;
  bool is_pd;
};

/// Gram matrix G[j][k] = f(a_j a_k*) = f(s_j t_k, t_j s_k), symmetrized;
/// positive definite when the least eigenvalue is >= -rel_tol |trace|.
PositiveDefiniteResult positive_definite_check(const PairFunction& f, std::span<const ElementPair> points,
                                               double rel_tol = 1e-10);

/// max of |eta(e, e) - 1| and |eta(s t', t s') - eta(s, t) conj(eta(s', t'))|
/// over pairs of points.
double semicharacter_defect(const PairFunction& eta, std::span<const ElementPair> points);

/// eta_rho(s, t) = rho(s) conj(rho(t)) on elements x elements.
PairFunction semicharacter(const SemigroupKind& kind, const CharacterPoint& z, std::span<const Element> elements);

/// The pairs a probe of `op` at `at` reads.
std::vector<ElementPair> probed_pairs(const SemigroupKind& kind, const ShiftCombination& op, const ElementPair& at);

}  // namespace covkit
