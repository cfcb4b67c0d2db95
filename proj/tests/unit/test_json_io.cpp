#include "doctest.h"

#include "covkit/errors.hpp"
#include "covkit/json_io.hpp"
#include "support/generators.hpp"

using namespace covkit;
using covkit::json::Json;

namespace {

void check_schema_error(const std::function<void()>& fn) {
  try {
    fn();
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
  }
}

}  // namespace

TEST_CASE("complex numbers") {
  CHECK(json::parse_complex(Json::parse("[1.5, -2]")) == Complex{1.5, -2.0});
  CHECK(json::parse_complex(Json::parse("3")) == Complex{3.0, 0.0});
  CHECK(json::to_json(Complex{0.25, -1.0}) == Json::parse("[0.25, -1.0]"));
  check_schema_error([] { (void)json::parse_complex(Json::parse("[1]")); });
  check_schema_error([] { (void)json::parse_complex(Json::parse("\"x\"")); });
}

TEST_CASE("semigroups and elements") {
  const auto add = json::parse_semigroup(Json::parse(R"({"kind":"nat_add","d":2})"));
  CHECK(add == SemigroupKind::nat_add(2));
  CHECK(json::parse_semigroup(json::to_json(add)) == add);
  const auto mult = json::parse_semigroup(Json::parse(R"({"kind":"nat_mult","primes":3})"));
  CHECK(mult == SemigroupKind::nat_mult(3));
  CHECK(json::parse_semigroup(Json::parse(R"({"kind":"half_line"})")) == SemigroupKind::half_line());

  CHECK(json::parse_element(add, Json::parse("[1,2]")) == Element::multi_index({1, 2}));
  CHECK(json::parse_element(mult, Json::parse("12")) == Element::integer(12));
  CHECK(json::parse_element(SemigroupKind::half_line(), Json::parse("0.5")) == Element::real(0.5));

  check_schema_error([] { (void)json::parse_semigroup(Json::parse(R"({"kind":"groups"})")); });
  check_schema_error([] { (void)json::parse_semigroup(Json::parse(R"({"kind":"nat_add"})")); });
  check_schema_error([&] { (void)json::parse_element(add, Json::parse("[1]")); });
  check_schema_error([&] { (void)json::parse_element(add, Json::parse("[1,-2]")); });
}

TEST_CASE("round trips") {
  gen::Rng rng(77);
  const auto kind = SemigroupKind::nat_add(2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Atom> atoms;
    for (const auto& p : gen::separated_points(rng, 3, 2, 1.0, 0.1)) atoms.push_back({p, rng.annulus(0.1, 1.0)});
    const AtomicMeasure mu(kind, atoms);
    const auto mu_json = json::to_json(mu);
    const auto back = json::parse_measure(kind, Json::parse(json::dump(mu_json)));
    REQUIRE(back.size() == mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) {
      CHECK(back.atoms()[k].point == mu.atoms()[k].point);
      CHECK(back.atoms()[k].weight == mu.atoms()[k].weight);
    }
    CHECK(json::dump(json::to_json(back)) == json::dump(mu_json));

    const auto f = gen::random_polynomial(rng, 2);
    const auto f_back = json::parse_symbol(Json::parse(json::dump(json::to_json(f))));
    for (const auto& a : mu.atoms()) CHECK(f_back(a.point) == f(a.point));
  }

  const auto table = Symbol::table({{{Complex{0.1, 0.2}}, 3.0}, {{-0.5}, Complex{0.0, 1.0}}});
  CHECK(json::dump(json::to_json(json::parse_symbol(json::to_json(table)))) == json::dump(json::to_json(table)));

  const auto op = admissible_generator(SemigroupKind::nat_add(1), {Element::multi_index({1}), Element::multi_index({0})},
                                       Complex{0.0, 1.0});
  CHECK(json::parse_shift_combination(SemigroupKind::nat_add(1), json::to_json(op)) == op);

  const DiscreteRandomVector rv({{0.25, {Complex{0.1, 0.2}}, 1.0}, {0.75, {-0.3}, Complex{0.0, 2.0}}});
  CHECK(json::dump(json::to_json(json::parse_random_vector(json::to_json(rv)))) == json::dump(json::to_json(rv)));

  const auto bergman = json::parse_kernel(Json::parse(R"({"bergman":5})"));
  CHECK(bergman.bergman_truncation() == 5);
  const auto kernel_back = json::parse_kernel(json::to_json(bergman));
  CHECK(kernel_back.coefficients() == bergman.coefficients());

  const SeriesCoefficients series{{MultiIndex{0}, 1.0}, {MultiIndex{2}, Complex{0.0, -0.5}}};
  CHECK(json::parse_series(json::series_to_json(series)) == series);

  const auto pf = laplace_pair_function(AtomicMeasure(SemigroupKind::nat_add(1), {{{0.5}, 1.0}}),
                                        std::vector<Element>{Element::multi_index({0}), Element::multi_index({1})});
  const auto pf_back = json::parse_pair_function(SemigroupKind::nat_add(1), json::to_json(pf));
  CHECK(pf_back.values() == pf.values());
}

TEST_CASE("schema errors") {
  const auto kind = SemigroupKind::nat_add(1);
  check_schema_error([&] { (void)json::parse_measure(kind, Json::parse(R"({"points":[]})")); });
  check_schema_error([&] { (void)json::parse_measure(kind, Json::parse(R"({"atoms":[{"point":[[1,0]]}]})")); });
  check_schema_error([] { (void)json::parse_symbol(Json::parse(R"({"kind":"spline"})")); });
  check_schema_error([] { (void)json::parse_random_vector(Json::parse(R"({"outcomes":[{"p":1}]})")); });
  check_schema_error([] { (void)json::parse_kernel(Json::parse(R"({"bergman":"many"})")); });
  check_schema_error([&] { (void)json::parse_pair_function(kind, Json::parse(R"({"grid":[[0]]})")); });
}

TEST_CASE("dump formatting") {
  Json j = Json::object();
  j["a"] = 0.1;
  j["b"] = -0.0;
  j["c"] = std::numeric_limits<double>::infinity();
  j["d"] = Json::array({1, 2, 3});
  j["e"] = Json::array({Json::array({1.0, 0.0}), Json::array({0.5, -0.5})});
  const std::string text = json::dump(j);
  CHECK(text.back() == '\n');
  CHECK(text.find("\"a\": 0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"b\": 0") != std::string::npos);
  CHECK(text.find("\"c\": null") != std::string::npos);
  CHECK(text.find("\"d\": [1, 2, 3]") != std::string::npos);
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(Json::parse(text)["e"][1][1] == -0.5);
  CHECK(json::dump(j) == text);
}

TEST_CASE("covariance report") {
  const auto kind = SemigroupKind::nat_add(1);
  const auto grid = EvaluationGrid::standard(kind);
  const AtomicMeasure two(kind, {{{1.0}, 0.5}, {{-1.0}, 0.5}});
  const auto report = json::to_json(decide_covariance(two, Symbol::one(), grid));
  CHECK(report.begin().key() == "verdict");
  CHECK(report["verdict"] == "not_point_mass");
  CHECK(report["witness_s"] == Json::parse("[1]"));
  CHECK(report["witness_t"] == Json::parse("[1]"));
  CHECK(report["residual"] == Json::parse("[1.0, 0.0]"));
  CHECK(report["certified"] == "witness");

  const AtomicMeasure point(kind, {{{0.3}, 2.0}});
  const auto pm = json::to_json(decide_covariance(point, Symbol::one(), grid));
  CHECK(pm["verdict"] == "point_mass");
  CHECK(pm["c"] == Json::parse("[2.0, 0.0]"));
  CHECK(pm["grid_order"] == 4);
  CHECK(pm["certified"] == "relative_to_grid");

  const AtomicMeasure anti(kind, {{{1.0}, 1.0}, {{-1.0}, -1.0}});
  const auto dg = json::to_json(decide_covariance(anti, Symbol::one(), grid));
  CHECK(dg["verdict"] == "degenerate");
  CHECK(dg["case"] == "mass_zero_neither_holds");
}
