#include "covkit/pair_function.hpp"

#include "covkit/errors.hpp"

namespace covkit {

PairFunction::PairFunction(SemigroupKind kind, std::vector<Element> grid, std::map<ElementPair, Complex> values)
    : kind_(kind), grid_(std::move(grid)), values_(std::move(values)) {
  for (const auto& [key, value] : values_) {
    validate_element(kind_, key.first);
    validate_element(kind_, key.second);
  }
  const Element e = identity(kind_);
  if (!contains(e, e)) throw Error(ErrorCode::MissingGridValue, "pair function is not defined at (e, e)");
}

PairFunction PairFunction::tabulate(const SemigroupKind& kind, std::span<const Element> grid,
                                    const std::function<Complex(const Element&, const Element&)>& f) {
  std::map<ElementPair, Complex> values;
  for (const auto& s : grid) {
    for (const auto& t : grid) values.emplace(ElementPair{s, t}, f(s, t));
  }
  return PairFunction(kind, std::vector<Element>(grid.begin(), grid.end()), std::move(values));
}

bool PairFunction::contains(const Element& s, const Element& t) const {
  return values_.find(ElementPair{s, t}) != values_.end();
}

Complex PairFunction::operator()(const Element& s, const Element& t) const {
  auto it = values_.find(ElementPair{s, t});
  if (it == values_.end())
    throw Error(ErrorCode::MissingGridValue,
                "pair function has no value at (" + to_string(s) + ", " + to_string(t) + ")");
  return it->second;
}

}  // namespace covkit
