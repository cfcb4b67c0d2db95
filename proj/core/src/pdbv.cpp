#include "covkit/pdbv.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "covkit/errors.hpp"

namespace covkit {

ShiftCombination ShiftCombination::identity(const SemigroupKind& kind) {
  const Element e = covkit::identity(kind);
  return shift({e, e});
}

ShiftCombination ShiftCombination::shift(ElementPair ab, Complex coeff) {
  return ShiftCombination({ShiftTerm{std::move(ab), coeff}});
}

ShiftCombination ShiftCombination::normalized() const {
  std::map<ElementPair, Complex> collected;
  for (const auto& term : terms_) collected[term.shift] += term.coeff;
  std::vector<ShiftTerm> out;
  for (auto& [shift, coeff] : collected) {
    if (coeff != Complex{0.0, 0.0}) out.push_back({shift, coeff});
  }
  return ShiftCombination(std::move(out));
}

ShiftCombination& ShiftCombination::operator+=(const ShiftCombination& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

ShiftCombination operator*(Complex c, ShiftCombination op) {
  for (auto& term : op.terms_) term.coeff *= c;
  return op;
}

bool operator==(const ShiftCombination& a, const ShiftCombination& b) {
  const auto x = a.normalized().terms();
  const auto y = b.normalized().terms();
  return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const ShiftTerm& p, const ShiftTerm& q) {
    return p.shift == q.shift && p.coeff == q.coeff;
  });
}

ShiftCombination compose(const SemigroupKind& kind, const ShiftCombination& a, const ShiftCombination& b) {
  std::vector<ShiftTerm> terms;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      terms.push_back({{combine(kind, x.shift.first, y.shift.first), combine(kind, x.shift.second, y.shift.second)},
                       x.coeff * y.coeff});
    }
  }
  return ShiftCombination(std::move(terms)).normalized();
}

std::vector<ElementPair> probed_pairs(const SemigroupKind& kind, const ShiftCombination& op, const ElementPair& at) {
  std::vector<ElementPair> out;
  for (const auto& term : op.terms())
    out.push_back({combine(kind, term.shift.first, at.first), combine(kind, term.shift.second, at.second)});
  return out;
}

Complex apply_shift(const ShiftCombination& op, const PairFunction& f, const ElementPair& at) {
  Complex sum{0.0, 0.0};
  for (const auto& term : op.terms()) {
    sum += term.coeff * f(combine(f.kind(), term.shift.first, at.first), combine(f.kind(), term.shift.second, at.second));
  }
  return sum;
}

ShiftCombination adjoint(const ShiftCombination& op) {
  std::vector<ShiftTerm> terms;
  terms.reserve(op.terms().size());
  for (const auto& term : op.terms()) terms.push_back({{term.shift.second, term.shift.first}, std::conj(term.coeff)});
  return ShiftCombination(std::move(terms));
}

ShiftCombination admissible_generator(const SemigroupKind& kind, const ElementPair& a, Complex sigma) {
  const bool allowed = sigma == Complex{1, 0} || sigma == Complex{-1, 0} || sigma == Complex{0, 1} ||
                       sigma == Complex{0, -1};
  if (!allowed) throw Error(ErrorCode::InvalidArgument, "sigma must be one of 1, -1, i, -i");
  validate_element(kind, a.first);
  validate_element(kind, a.second);
  ShiftCombination op = 0.25 * ShiftCombination::identity(kind);
  op += ShiftCombination::shift(a, sigma / 8.0);
  op += ShiftCombination::shift({a.second, a.first}, std::conj(sigma) / 8.0);
  return op.normalized();
}

std::vector<ShiftCombination> admissible_family(const SemigroupKind& kind, const ElementPair& a) {
  std::vector<ShiftCombination> family;
  for (Complex sigma : {Complex{1, 0}, Complex{-1, 0}, Complex{0, 1}, Complex{0, -1}})
    family.push_back(admissible_generator(kind, a, sigma));
  return family;
}

double bv_norm(const PairFunction& f, std::span<const ShiftCombination> lambda) {
  const Element e = identity(f.kind());
  double sum = 0.0;
  for (const auto& op : lambda) sum += std::abs(apply_shift(op, f, {e, e}));
  return sum;
}

PositiveDefiniteResult positive_definite_check(const PairFunction& f, std::span<const ElementPair> points,
                                               double rel_tol) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n == 0) return {0.0, 0.0, 0.0, true};
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& [sj, tj] = points[static_cast<std::size_t>(j)];
      const auto& [sk, tk] = points[static_cast<std::size_t>(k)];
      gram(j, k) = f(combine(f.kind(), sj, tk), combine(f.kind(), tj, sk));
    }
  }
  const Eigen::MatrixXcd hermitian = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hermitian, Eigen::EigenvaluesOnly);
  PositiveDefiniteResult out;
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  out.trace = hermitian.trace().real();
  out.asymmetry = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
  out.is_pd = out.min_eigenvalue >= -rel_tol * std::abs(out.trace);
  return out;
}

double semicharacter_defect(const PairFunction& eta, std::span<const ElementPair> points) {
  const Element e = identity(eta.kind());
  double worst = std::abs(eta(e, e) - Complex{1.0, 0.0});
  for (const auto& [s, t] : points) {
    for (const auto& [s2, t2] : points) {
      const Complex lhs = eta(combine(eta.kind(), s, t2), combine(eta.kind(), t, s2));
      const Complex rhs = eta(s, t) * std::conj(eta(s2, t2));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

PairFunction semicharacter(const SemigroupKind& kind, const CharacterPoint& z, std::span<const Element> elements) {
  validate_point(kind, z);
  return PairFunction::tabulate(kind, elements, [&](const Element& s, const Element& t) {
    return char_eval(kind, z, s) * std::conj(char_eval(kind, z, t));
  });
}

}  // namespace covkit
