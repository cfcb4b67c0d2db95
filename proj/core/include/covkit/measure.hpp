#pragma once

#include <map>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "covkit/semigroup.hpp"
#include "covkit/types.hpp"

namespace covkit {

/// Points closer than this (Euclidean distance in C^n) are one atom.
inline constexpr double kAtomMergeDistance = 1e-12;

struct Atom {
  CharacterPoint point;
  Complex weight;
};

double point_distance(const CharacterPoint& a, const CharacterPoint& b);

/// Sums the weights of atoms whose points lie within kAtomMergeDistance of an
/// earlier atom. The first occurrence keeps its position and point.
std::vector<Atom> merge_atoms(std::vector<Atom> atoms);

/// Finite complex measure sum_k w_k delta_{z_k} on the character space of a
/// semigroup. Atom points are pairwise distinct after construction; atoms of
/// zero weight are allowed and still count as part of the support set Gamma.
class AtomicMeasure {
 public:
  AtomicMeasure(SemigroupKind kind, std::vector<Atom> atoms);

  const SemigroupKind& kind() const noexcept { return kind_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

 private:
  SemigroupKind kind_;
  std::vector<Atom> atoms_;
};

/// The continuous function F on character space, known on the atoms.
class Symbol {
 public:
  struct Constant {
    Complex value;
  };
  struct Polynomial {
    std::map<MultiIndex, Complex> coefficients;
  };
  struct Table {
    std::vector<std::pair<CharacterPoint, Complex>> entries;
  };
  using Spec = std::variant<Constant, Polynomial, Table>;

  static Symbol constant(Complex value) { return Symbol(Constant{value}); }
  static Symbol one() { return constant({1.0, 0.0}); }
  static Symbol polynomial(std::map<MultiIndex, Complex> coefficients);
  static Symbol table(std::vector<std::pair<CharacterPoint, Complex>> entries);

  /// Throws SymbolUndefinedAtAtom when a table has no entry at `z` or a
  /// polynomial's arity differs from the point dimension.
  Complex operator()(const CharacterPoint& z) const;

  const Spec& spec() const noexcept { return spec_; }

 private:
  explicit Symbol(Spec spec) : spec_(std::move(spec)) {}

  Spec spec_;
};

enum class SymbolMode { F, ConjF, AbsFSquared };

Complex total_mass(const AtomicMeasure& mu);

/// sum_k |w_k|, the mass of |mu|.
double total_abs_mass(const AtomicMeasure& mu);

/// |mu|: moduli of the weights, zero-weight atoms dropped. Throws
/// EmptyMeasure if every weight is zero.
AtomicMeasure total_variation(const AtomicMeasure& mu);

/// h with mu = h |mu| and |h| = 1, as a table on the atoms.
Symbol polar_density(const AtomicMeasure& mu);

/// F mu, conj(F) mu or |F|^2 mu. Atoms whose new weight is zero are kept.
AtomicMeasure apply_symbol(const AtomicMeasure& mu, const Symbol& f, SymbolMode mode);

/// |s|_Gamma = max over atoms (including zero-weight ones) of |rho_z(s)|.
double sup_norm(const AtomicMeasure& mu, const Element& s);

}  // namespace covkit
