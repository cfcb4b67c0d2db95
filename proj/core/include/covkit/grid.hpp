#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "covkit/semigroup.hpp"

namespace covkit {

/// Values of a function of one semigroup variable on a finite probe set.
using ElementTable = std::map<Element, Complex>;

/// Finite probe of "for all s in S": distinct elements, identity first.
class EvaluationGrid {
 public:
  /// Validates every element, drops duplicates and puts the identity first
  /// (inserting it when absent).
  EvaluationGrid(SemigroupKind kind, std::vector<Element> elements, std::optional<int> order = std::nullopt);

  /// The default probe set of a given order:
  ///  - NatAdd(d): multi-indices with every component <= order;
  ///    default order 4 for d <= 2, 2 for d = 3, 1 beyond.
  ///  - NatMult(L): products of the first L primes with exponents <= order,
  ///    same defaults with L in place of d.
  ///  - HalfLine: {0, 1/4, ..., order/2}; default order 4, i.e. up to 2.0.
  static EvaluationGrid standard(const SemigroupKind& kind, std::optional<int> order = std::nullopt);

  static int default_order(const SemigroupKind& kind);

  const SemigroupKind& kind() const noexcept { return kind_; }
  std::span<const Element> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::optional<int> order() const noexcept { return order_; }

  bool contains(const Element& e) const;

  /// The grid together with combine(s, t) for all listed s, t.
  EvaluationGrid closure() const;

 private:
  SemigroupKind kind_;
  std::vector<Element> elements_;
  std::optional<int> order_;
};

}  // namespace covkit
