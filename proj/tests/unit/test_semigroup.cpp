#include "doctest.h"

#include <cmath>
#include <numbers>

#include "covkit/errors.hpp"
#include "covkit/grid.hpp"
#include "covkit/semigroup.hpp"
#include "support/generators.hpp"

using namespace covkit;

TEST_CASE("identity elements") {
  CHECK(identity(SemigroupKind::nat_add(2)) == Element::multi_index({0, 0}));
  CHECK(identity(SemigroupKind::nat_mult(3)) == Element::integer(1));
  CHECK(identity(SemigroupKind::half_line()) == Element::real(0.0));
}

TEST_CASE("combine") {
  CHECK(combine(SemigroupKind::nat_add(2), Element::multi_index({1, 0}), Element::multi_index({0, 2})) ==
        Element::multi_index({1, 2}));
  CHECK(combine(SemigroupKind::nat_mult(3), Element::integer(6), Element::integer(10)) == Element::integer(60));
  CHECK(combine(SemigroupKind::half_line(), Element::real(0.5), Element::real(0.25)) == Element::real(0.75));

  SUBCASE("nat_mult overflow") {
    const auto big = Element::integer(std::uint64_t{1} << 40);
    try {
      (void)combine(SemigroupKind::nat_mult(1), big, big);
      FAIL("expected overflow");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GridTooLarge);
    }
  }
}

TEST_CASE("kappa") {
  CHECK(kappa(12, 2) == MultiIndex{2, 1});
  CHECK(kappa(1, 3) == MultiIndex{0, 0, 0});
  CHECK(kappa(10, 3) == MultiIndex{1, 0, 1});
  CHECK(nth_prime(0) == 2);
  CHECK(nth_prime(4) == 11);

  SUBCASE("prime beyond range") {
    try {
      (void)kappa(7, 3);
      FAIL("expected PrimeOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PrimeOutOfRange);
    }
  }

  SUBCASE("morphism") {
    const int primes = 4;
    for (std::uint64_t n = 1; n <= 60; ++n) {
      for (std::uint64_t m = 1; m <= 60; ++m) {
        MultiIndex a, b;
        try {
          a = kappa(n, primes);
          b = kappa(m, primes);
        } catch (const Error&) {
          continue;
        }
        const auto ab = kappa(n * m, primes);
        for (int j = 0; j < primes; ++j) CHECK(ab[j] == a[j] + b[j]);
      }
    }
  }
}

TEST_CASE("char_eval examples") {
  CHECK(char_eval(SemigroupKind::nat_add(1), {0.5}, Element::multi_index({3})) == Complex{0.125, 0.0});
  // 0^0 = 1
  CHECK(char_eval(SemigroupKind::nat_add(2), {0.0, 0.3}, Element::multi_index({0, 0})) == Complex{1.0, 0.0});
  CHECK(char_eval(SemigroupKind::nat_add(2), {0.0, 0.3}, Element::multi_index({0, 1})) == Complex{0.3, 0.0});
  CHECK(char_eval(SemigroupKind::nat_add(2), {0.0, 0.3}, Element::multi_index({1, 0})) == Complex{0.0, 0.0});
  const Complex half = char_eval(SemigroupKind::half_line(), {Complex{1.0, 0.0}}, Element::real(std::log(2.0)));
  CHECK(std::abs(half - 0.5) < 1e-15);
  // z^kappa(12) with kappa(12) = (2, 1)
  CHECK(std::abs(char_eval(SemigroupKind::nat_mult(2), {Complex{0, 1}, 2.0}, Element::integer(12)) - (-2.0)) < 1e-15);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate_point(SemigroupKind::half_line(), {Complex{-0.1, 0.0}}), Error);
  CHECK_THROWS_AS(validate_point(SemigroupKind::nat_add(2), {Complex{0.1, 0.0}}), Error);
  CHECK_THROWS_AS(validate_element(SemigroupKind::nat_add(2), Element::integer(3)), Error);
  CHECK_THROWS_AS(validate_element(SemigroupKind::half_line(), Element::real(-1.0)), Error);
  CHECK_THROWS_AS(validate_element(SemigroupKind::nat_mult(2), Element::integer(5)), Error);
  CHECK_THROWS_AS(SemigroupKind::nat_add(0), Error);
}

TEST_CASE("multiplicativity on standard grids") {
  gen::Rng rng(7);
  const SemigroupKind kinds[] = {SemigroupKind::nat_add(1), SemigroupKind::nat_add(2), SemigroupKind::nat_mult(2),
                                 SemigroupKind::half_line()};
  for (const auto& kind : kinds) {
    const auto grid = EvaluationGrid::standard(kind);
    for (int trial = 0; trial < 10; ++trial) {
      CharacterPoint z = gen::polydisc_point(rng, kind.point_dim(), 1.2);
      if (kind.tag() == SemigroupTag::HalfLine) z[0] = Complex{std::abs(z[0].real()), z[0].imag()};
      CHECK(char_eval(kind, z, identity(kind)) == Complex{1.0, 0.0});
      for (const auto& s : grid.elements()) {
        for (const auto& t : grid.elements()) {
          const Complex lhs = char_eval(kind, z, combine(kind, s, t));
          const Complex rhs = char_eval(kind, z, s) * char_eval(kind, z, t);
          CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
      }
    }
  }
}

TEST_CASE("standard grids") {
  CHECK(EvaluationGrid::standard(SemigroupKind::nat_add(1)).size() == 5);
  CHECK(EvaluationGrid::standard(SemigroupKind::nat_add(2)).size() == 25);
  CHECK(EvaluationGrid::standard(SemigroupKind::nat_add(3)).size() == 27);
  const auto half = EvaluationGrid::standard(SemigroupKind::half_line());
  CHECK(half.size() == 9);
  CHECK(half.elements().back() == Element::real(2.0));
  const auto mult = EvaluationGrid::standard(SemigroupKind::nat_mult(2), 1);
  CHECK(mult.size() == 4);
  CHECK(mult.contains(Element::integer(6)));

  SUBCASE("identity is inserted first and duplicates dropped") {
    const auto kind = SemigroupKind::nat_add(1);
    EvaluationGrid grid(kind, {Element::multi_index({2}), Element::multi_index({2}), Element::multi_index({1})});
    REQUIRE(grid.size() == 3);
    CHECK(grid.elements()[0] == identity(kind));
    const auto closed = grid.closure();
    CHECK(closed.contains(Element::multi_index({4})));
    CHECK(closed.contains(Element::multi_index({3})));
    CHECK(closed.size() == 5);
  }
}
