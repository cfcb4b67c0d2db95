#include "covkit/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "covkit/errors.hpp"

namespace covkit {

double point_distance(const CharacterPoint& a, const CharacterPoint& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
  return std::sqrt(sum);
}

std::vector<Atom> merge_atoms(std::vector<Atom> atoms) {
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (auto& atom : atoms) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Atom& m) {
      return point_distance(m.point, atom.point) <= kAtomMergeDistance;
    });
    if (it == merged.end()) {
      merged.push_back(std::move(atom));
    } else {
      it->weight += atom.weight;
    }
  }
  return merged;
}

AtomicMeasure::AtomicMeasure(SemigroupKind kind, std::vector<Atom> atoms) : kind_(kind) {
  if (atoms.empty()) throw Error(ErrorCode::EmptyMeasure, "an atomic measure needs at least one atom");
  for (const auto& atom : atoms) {
    validate_point(kind_, atom.point);
    if (!std::isfinite(atom.weight.real()) || !std::isfinite(atom.weight.imag()))
      throw Error(ErrorCode::InvalidArgument, "atom weight is not finite");
  }
  atoms_ = merge_atoms(std::move(atoms));
}

Symbol Symbol::polynomial(std::map<MultiIndex, Complex> coefficients) {
  std::size_t arity = coefficients.empty() ? 0 : coefficients.begin()->first.size();
  for (const auto& [m, c] : coefficients) {
    if (m.size() != arity) throw Error(ErrorCode::InvalidArgument, "polynomial terms have mixed arity");
  }
  return Symbol(Polynomial{std::move(coefficients)});
}

Symbol Symbol::table(std::vector<std::pair<CharacterPoint, Complex>> entries) {
  return Symbol(Table{std::move(entries)});
}

Complex Symbol::operator()(const CharacterPoint& z) const {
  if (const auto* c = std::get_if<Constant>(&spec_)) return c->value;
  if (const auto* p = std::get_if<Polynomial>(&spec_)) {
    Complex value{0.0, 0.0};
    for (const auto& [m, coeff] : p->coefficients) {
      if (m.size() != z.size())
        throw Error(ErrorCode::SymbolUndefinedAtAtom, "polynomial symbol arity " + std::to_string(m.size()) +
                                                          " does not match point dimension " +
                                                          std::to_string(z.size()));
      value += coeff * monomial(z, m);
    }
    return value;
  }
  const auto& table = std::get<Table>(spec_);
  for (const auto& [point, value] : table.entries) {
    if (point_distance(point, z) <= kAtomMergeDistance) return value;
  }
  throw Error(ErrorCode::SymbolUndefinedAtAtom, "symbol table has no entry at an atom");
}

Complex total_mass(const AtomicMeasure& mu) {
  Complex sum{0.0, 0.0};
  for (const auto& atom : mu.atoms()) sum += atom.weight;
  return sum;
}

double total_abs_mass(const AtomicMeasure& mu) {
  double sum = 0.0;
  for (const auto& atom : mu.atoms()) sum += std::abs(atom.weight);
  return sum;
}

AtomicMeasure total_variation(const AtomicMeasure& mu) {
  std::vector<Atom> atoms;
  for (const auto& atom : mu.atoms()) {
    const double w = std::abs(atom.weight);
    if (w > 0.0) atoms.push_back({atom.point, Complex{w, 0.0}});
  }
  if (atoms.empty()) throw Error(ErrorCode::EmptyMeasure, "total variation of the zero measure has no atoms");
  return AtomicMeasure(mu.kind(), std::move(atoms));
}

Symbol polar_density(const AtomicMeasure& mu) {
  std::vector<std::pair<CharacterPoint, Complex>> entries;
  entries.reserve(mu.size());
  for (const auto& atom : mu.atoms()) {
    const double r = std::abs(atom.weight);
    if (r == 0.0) throw Error(ErrorCode::ZeroWeightAtom, "polar density is undefined at a zero-weight atom");
    entries.emplace_back(atom.point, atom.weight / r);
  }
  return Symbol::table(std::move(entries));
}

AtomicMeasure apply_symbol(const AtomicMeasure& mu, const Symbol& f, SymbolMode mode) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.size());
  for (const auto& atom : mu.atoms()) {
    const Complex value = f(atom.point);
    Complex factor = value;
    if (mode == SymbolMode::ConjF) factor = std::conj(value);
    if (mode == SymbolMode::AbsFSquared) factor = Complex{std::norm(value), 0.0};
    atoms.push_back({atom.point, atom.weight * factor});
  }
  return AtomicMeasure(mu.kind(), std::move(atoms));
}

double sup_norm(const AtomicMeasure& mu, const Element& s) {
  double best = 0.0;
  for (const auto& atom : mu.atoms()) best = std::max(best, std::abs(char_eval(mu.kind(), atom.point, s)));
  return best;
}

}  // namespace covkit
