#include "covkit/semigroup.hpp"

#include <cmath>
#include <sstream>

#include "covkit/errors.hpp"

namespace covkit {

SemigroupKind SemigroupKind::nat_add(int dimension) {
  if (dimension < 1) throw Error(ErrorCode::InvalidArgument, "nat_add dimension must be >= 1");
  return {SemigroupTag::NatAdd, dimension};
}

SemigroupKind SemigroupKind::nat_mult(int primes) {
  if (primes < 1) throw Error(ErrorCode::InvalidArgument, "nat_mult prime count must be >= 1");
  return {SemigroupTag::NatMult, primes};
}

SemigroupKind SemigroupKind::half_line() { return {SemigroupTag::HalfLine, 1}; }

std::string to_string(const Element& e) {
  std::ostringstream os;
  if (e.is_multi_index()) {
    os << '(';
    const auto& m = e.as_multi_index();
    for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
    os << ')';
  } else if (e.is_integer()) {
    os << e.as_integer();
  } else {
    os << e.as_real();
  }
  return os.str();
}

void validate_element(const SemigroupKind& kind, const Element& e) {
  switch (kind.tag()) {
    case SemigroupTag::NatAdd:
      if (!e.is_multi_index() || e.as_multi_index().size() != kind.point_dim())
        throw Error(ErrorCode::InvalidArgument,
                    "element " + to_string(e) + " is not a multi-index of length " +
                        std::to_string(kind.point_dim()));
      return;
    case SemigroupTag::NatMult:
      if (!e.is_integer() || e.as_integer() == 0)
        throw Error(ErrorCode::InvalidArgument, "element " + to_string(e) + " is not a positive integer");
      (void)kappa(e.as_integer(), static_cast<int>(kind.point_dim()));
      return;
    case SemigroupTag::HalfLine:
      if (!e.is_real() || !(e.as_real() >= 0.0) || !std::isfinite(e.as_real()))
        throw Error(ErrorCode::InvalidArgument, "element " + to_string(e) + " is not a finite real >= 0");
      return;
  }
}

void validate_point(const SemigroupKind& kind, const CharacterPoint& z) {
  if (z.size() != kind.point_dim())
    throw Error(ErrorCode::InvalidArgument, "character point has " + std::to_string(z.size()) +
                                                " coordinates, expected " + std::to_string(kind.point_dim()));
  for (const auto& c : z) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorCode::InvalidArgument, "character point has a non-finite coordinate");
  }
  if (kind.tag() == SemigroupTag::HalfLine && z[0].real() < 0.0)
    throw Error(ErrorCode::InvalidArgument, "half-line character needs Re z >= 0");
}

Element identity(const SemigroupKind& kind) {
  switch (kind.tag()) {
    case SemigroupTag::NatAdd: return Element::multi_index(MultiIndex(kind.point_dim(), 0u));
    case SemigroupTag::NatMult: return Element::integer(1);
    case SemigroupTag::HalfLine: return Element::real(0.0);
  }
  return Element::real(0.0);
}

Element combine(const SemigroupKind& kind, const Element& a, const Element& b) {
  switch (kind.tag()) {
    case SemigroupTag::NatAdd: {
      const auto& x = a.as_multi_index();
      const auto& y = b.as_multi_index();
      if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "multi-index length mismatch");
      MultiIndex sum(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + y[i];
      return Element::multi_index(std::move(sum));
    }
    case SemigroupTag::NatMult: {
      std::uint64_t product = 0;
      if (__builtin_mul_overflow(a.as_integer(), b.as_integer(), &product))
        throw Error(ErrorCode::GridTooLarge,
                    "product " + to_string(a) + "*" + to_string(b) + " overflows 64 bits");
      return Element::integer(product);
    }
    case SemigroupTag::HalfLine: return Element::real(a.as_real() + b.as_real());
  }
  return a;
}

std::uint64_t nth_prime(int j) {
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "prime index must be >= 0");
  int found = -1;
  for (std::uint64_t candidate = 2;; ++candidate) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= candidate; ++d) {
      if (candidate % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime && ++found == j) return candidate;
  }
}

MultiIndex kappa(std::uint64_t n, int primes) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "kappa needs n >= 1");
  if (primes < 1) throw Error(ErrorCode::InvalidArgument, "kappa needs at least one prime");
  MultiIndex exponents(static_cast<std::size_t>(primes), 0u);
  std::uint64_t rest = n;
  for (int j = 0; j < primes && rest > 1; ++j) {
    const std::uint64_t p = nth_prime(j);
    while (rest % p == 0) {
      rest /= p;
      ++exponents[static_cast<std::size_t>(j)];
    }
  }
  if (rest != 1)
    throw Error(ErrorCode::PrimeOutOfRange, std::to_string(n) + " has a prime factor beyond the first " +
                                                std::to_string(primes) + " primes");
  return exponents;
}

Complex monomial(const CharacterPoint& z, const MultiIndex& m) {
  if (z.size() != m.size()) throw Error(ErrorCode::InvalidArgument, "monomial dimension mismatch");
  Complex value{1.0, 0.0};
  for (std::size_t i = 0; i < m.size(); ++i) value *= ipow(z[i], m[i]);
  return value;
}

Complex char_eval(const SemigroupKind& kind, const CharacterPoint& z, const Element& s) {
  switch (kind.tag()) {
    case SemigroupTag::NatAdd: return monomial(z, s.as_multi_index());
    case SemigroupTag::NatMult: return monomial(z, kappa(s.as_integer(), static_cast<int>(kind.point_dim())));
    case SemigroupTag::HalfLine: {
      const double t = s.as_real();
      if (t == 0.0) return {1.0, 0.0};
      return std::exp(-t * z[0]);
    }
  }
  return {0.0, 0.0};
}

}  // namespace covkit
