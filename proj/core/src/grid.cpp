#include "covkit/grid.hpp"

#include <algorithm>
#include <set>

#include "covkit/errors.hpp"

namespace covkit {

namespace {

// Multi-indices in [0, order]^dim, last coordinate fastest.
std::vector<MultiIndex> box(std::size_t dim, unsigned order) {
  std::vector<MultiIndex> out;
  MultiIndex m(dim, 0u);
  while (true) {
    out.push_back(m);
    bool advanced = false;
    for (std::size_t i = dim; i-- > 0;) {
      if (m[i] < order) {
        ++m[i];
        advanced = true;
        break;
      }
      m[i] = 0u;
    }
    if (!advanced) return out;
  }
}

}  // namespace

EvaluationGrid::EvaluationGrid(SemigroupKind kind, std::vector<Element> elements, std::optional<int> order)
    : kind_(kind), order_(order) {
  const Element e = identity(kind_);
  std::set<Element> seen{e};
  elements_.push_back(e);
  for (auto& element : elements) {
    validate_element(kind_, element);
    if (seen.insert(element).second) elements_.push_back(std::move(element));
  }
}

int EvaluationGrid::default_order(const SemigroupKind& kind) {
  if (kind.tag() == SemigroupTag::HalfLine) return 4;
  const std::size_t d = kind.point_dim();
  if (d <= 2) return 4;
  if (d == 3) return 2;
  return 1;
}

EvaluationGrid EvaluationGrid::standard(const SemigroupKind& kind, std::optional<int> order) {
  const int k = order.value_or(default_order(kind));
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "grid order must be >= 0");
  std::vector<Element> elements;
  switch (kind.tag()) {
    case SemigroupTag::NatAdd:
      for (auto& m : box(kind.point_dim(), static_cast<unsigned>(k))) elements.push_back(Element::multi_index(m));
      break;
    case SemigroupTag::NatMult:
      for (const auto& m : box(kind.point_dim(), static_cast<unsigned>(k))) {
        std::uint64_t n = 1;
        for (std::size_t j = 0; j < m.size(); ++j) {
          const std::uint64_t p = nth_prime(static_cast<int>(j));
          for (unsigned r = 0; r < m[j]; ++r) {
            if (__builtin_mul_overflow(n, p, &n))
              throw Error(ErrorCode::GridTooLarge, "standard grid element overflows 64 bits");
          }
        }
        elements.push_back(Element::integer(n));
      }
      break;
    case SemigroupTag::HalfLine:
      for (int j = 0; j <= 2 * k; ++j) elements.push_back(Element::real(0.25 * j));
      break;
  }
  return EvaluationGrid(kind, std::move(elements), k);
}

bool EvaluationGrid::contains(const Element& e) const {
  return std::find(elements_.begin(), elements_.end(), e) != elements_.end();
}

EvaluationGrid EvaluationGrid::closure() const {
  std::vector<Element> closed(elements_.begin(), elements_.end());
  for (const auto& s : elements_) {
    for (const auto& t : elements_) closed.push_back(combine(kind_, s, t));
  }
  return EvaluationGrid(kind_, std::move(closed), order_);
}

}  // namespace covkit
