#pragma once

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "covkit/semigroup.hpp"

namespace covkit {

using ElementPair = std::pair<Element, Element>;

/// A complex function on S x S known on a finite set of pairs.
class PairFunction {
 public:
  /// Requires a value at (e, e); throws MissingGridValue otherwise.
  PairFunction(SemigroupKind kind, std::vector<Element> grid, std::map<ElementPair, Complex> values);

  /// f(s, t) for every (s, t) in grid x grid.
  static PairFunction tabulate(const SemigroupKind& kind, std::span<const Element> grid,
                               const std::function<Complex(const Element&, const Element&)>& f);

  const SemigroupKind& kind() const noexcept { return kind_; }
  std::span<const Element> grid() const noexcept { return grid_; }
  const std::map<ElementPair, Complex>& values() const noexcept { return values_; }

  bool contains(const Element& s, const Element& t) const;

  /// Throws MissingGridValue when (s, t) is not tabulated.
  Complex operator()(const Element& s, const Element& t) const;

 private:
  SemigroupKind kind_;
  std::vector<Element> grid_;
  std::map<ElementPair, Complex> values_;
};

}  // namespace covkit
