#include "covkit/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "covkit/errors.hpp"

namespace covkit::json {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing key '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) schema(std::string(what) + " must be a number");
  return j.get<double>();
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array");
  return j;
}

void write_double(std::ostream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  if (v == 0.0) v = 0.0;  // no "-0"
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  os << buffer;
}

void write(std::ostream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write(os, it.value(), depth + 1);
      }
      os << '\n' << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line: complex pairs, multi-indices.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
      if (flat) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], depth + 1);
        }
        os << ']';
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, j[i], depth + 1);
      }
      os << '\n' << close_pad << ']';
      return;
    }
    case Json::value_t::number_float: write_double(os, j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace

Complex parse_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) schema("complex numbers are [re, im] pairs");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

SemigroupKind parse_semigroup(const Json& j) {
  const auto kind = field(j, "kind");
  if (!kind.is_string()) schema("semigroup kind must be a string");
  const auto name = kind.get<std::string>();
  if (name == "nat_add") return SemigroupKind::nat_add(static_cast<int>(integer(field(j, "d"), "d")));
  if (name == "nat_mult") return SemigroupKind::nat_mult(static_cast<int>(integer(field(j, "primes"), "primes")));
  if (name == "half_line") return SemigroupKind::half_line();
  schema("unknown semigroup kind '" + name + "'");
}

Json to_json(const SemigroupKind& kind) {
  Json j;
  switch (kind.tag()) {
    case SemigroupTag::NatAdd:
      j["kind"] = "nat_add";
      j["d"] = kind.point_dim();
      break;
    case SemigroupTag::NatMult:
      j["kind"] = "nat_mult";
      j["primes"] = kind.point_dim();
      break;
    case SemigroupTag::HalfLine: j["kind"] = "half_line"; break;
  }
  return j;
}

MultiIndex parse_multi_index(const Json& j) {
  MultiIndex m;
  for (const auto& x : array(j, "multi-index")) {
    const auto v = integer(x, "multi-index entry");
    if (v < 0) schema("multi-index entries must be >= 0");
    m.push_back(static_cast<unsigned>(v));
  }
  return m;
}

Element parse_element(const SemigroupKind& kind, const Json& j) {
  Element e = Element::real(0.0);
  switch (kind.tag()) {
    case SemigroupTag::NatAdd:
      if (j.is_number_integer() && kind.point_dim() == 1) {
        e = Element::multi_index(parse_multi_index(Json::array({j})));
      } else {
        e = Element::multi_index(parse_multi_index(j));
      }
      break;
    case SemigroupTag::NatMult: {
      const auto n = integer(j, "nat_mult element");
      if (n < 1) schema("nat_mult elements must be >= 1");
      e = Element::integer(static_cast<std::uint64_t>(n));
      break;
    }
    case SemigroupTag::HalfLine: e = Element::real(number(j, "half_line element")); break;
  }
  try {
    validate_element(kind, e);
  } catch (const Error& err) {
    schema(err.what());
  }
  return e;
}

Json to_json(const Element& e) {
  if (e.is_multi_index()) return Json(e.as_multi_index());
  if (e.is_integer()) return Json(e.as_integer());
  return Json(e.as_real());
}

CharacterPoint parse_point(const Json& j) {
  CharacterPoint z;
  for (const auto& c : array(j, "point")) z.push_back(parse_complex(c));
  return z;
}

Json point_to_json(const CharacterPoint& z) {
  Json j = Json::array();
  for (const auto& c : z) j.push_back(to_json(c));
  return j;
}

AtomicMeasure parse_measure(const SemigroupKind& kind, const Json& j) {
  std::vector<Atom> atoms;
  for (const auto& a : array(field(j, "atoms"), "atoms"))
    atoms.push_back({parse_point(field(a, "point")), parse_complex(field(a, "weight"))});
  return AtomicMeasure(kind, std::move(atoms));
}

Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& atom : mu.atoms()) {
    Json a;
    a["point"] = point_to_json(atom.point);
    a["weight"] = to_json(atom.weight);
    atoms.push_back(std::move(a));
  }
  Json j;
  j["atoms"] = std::move(atoms);
  return j;
}

Symbol parse_symbol(const Json& j) {
  const auto& kind = field(j, "kind");
  if (!kind.is_string()) schema("symbol kind must be a string");
  const auto name = kind.get<std::string>();
  if (name == "const") return Symbol::constant(parse_complex(field(j, "value")));
  if (name == "poly") {
    std::map<MultiIndex, Complex> coefficients;
    for (const auto& t : array(field(j, "terms"), "terms"))
      coefficients[parse_multi_index(field(t, "m"))] += parse_complex(field(t, "c"));
    return Symbol::polynomial(std::move(coefficients));
  }
  if (name == "table") {
    std::vector<std::pair<CharacterPoint, Complex>> entries;
    for (const auto& e : array(field(j, "entries"), "entries"))
      entries.emplace_back(parse_point(field(e, "point")), parse_complex(field(e, "value")));
    return Symbol::table(std::move(entries));
  }
  schema("unknown symbol kind '" + name + "'");
}

Json to_json(const Symbol& f) {
  Json j;
  if (const auto* c = std::get_if<Symbol::Constant>(&f.spec())) {
    j["kind"] = "const";
    j["value"] = to_json(c->value);
  } else if (const auto* p = std::get_if<Symbol::Polynomial>(&f.spec())) {
    j["kind"] = "poly";
    Json terms = Json::array();
    for (const auto& [m, c] : p->coefficients) terms.push_back(Json{{"m", m}, {"c", to_json(c)}});
    j["terms"] = std::move(terms);
  } else {
    const auto& t = std::get<Symbol::Table>(f.spec());
    j["kind"] = "table";
    Json entries = Json::array();
    for (const auto& [z, v] : t.entries) entries.push_back(Json{{"point", point_to_json(z)}, {"value", to_json(v)}});
    j["entries"] = std::move(entries);
  }
  return j;
}

PairFunction parse_pair_function(const SemigroupKind& kind, const Json& j) {
  std::vector<Element> grid;
  if (j.contains("grid")) {
    for (const auto& e : array(j["grid"], "grid")) grid.push_back(parse_element(kind, e));
  }
  std::map<ElementPair, Complex> values;
  for (const auto& v : array(field(j, "values"), "values")) {
    values[{parse_element(kind, field(v, "s")), parse_element(kind, field(v, "t"))}] = parse_complex(field(v, "v"));
  }
  return PairFunction(kind, std::move(grid), std::move(values));
}

Json to_json(const PairFunction& f) {
  Json grid = Json::array();
  for (const auto& e : f.grid()) grid.push_back(to_json(e));
  Json values = Json::array();
  for (const auto& [st, v] : f.values())
    values.push_back(Json{{"s", to_json(st.first)}, {"t", to_json(st.second)}, {"v", to_json(v)}});
  Json j;
  j["grid"] = std::move(grid);
  j["values"] = std::move(values);
  return j;
}

ShiftCombination parse_shift_combination(const SemigroupKind& kind, const Json& j) {
  std::vector<ShiftTerm> terms;
  for (const auto& t : array(j, "shift combination")) {
    terms.push_back({{parse_element(kind, field(t, "a")), parse_element(kind, field(t, "b"))},
                     parse_complex(field(t, "coeff"))});
  }
  return ShiftCombination(std::move(terms));
}

Json to_json(const ShiftCombination& op) {
  Json j = Json::array();
  for (const auto& t : op.terms())
    j.push_back(Json{{"a", to_json(t.shift.first)}, {"b", to_json(t.shift.second)}, {"coeff", to_json(t.coeff)}});
  return j;
}

DiscreteRandomVector parse_random_vector(const Json& j) {
  std::vector<Outcome> outcomes;
  for (const auto& o : array(field(j, "outcomes"), "outcomes")) {
    outcomes.push_back({number(field(o, "p"), "p"), parse_point(field(o, "x")), parse_complex(field(o, "y"))});
  }
  return DiscreteRandomVector(std::move(outcomes));
}

Json to_json(const DiscreteRandomVector& rv) {
  Json outcomes = Json::array();
  for (const auto& o : rv.outcomes())
    outcomes.push_back(Json{{"p", o.probability}, {"x", point_to_json(o.x)}, {"y", to_json(o.y)}});
  Json j;
  j["outcomes"] = std::move(outcomes);
  return j;
}

KernelCoefficients parse_kernel(const Json& j) {
  if (j.is_object() && j.contains("bergman"))
    return KernelCoefficients::bergman(static_cast<int>(integer(j["bergman"], "bergman truncation")));
  const Json& list = j.is_object() ? field(j, "coefficients") : j;
  std::map<std::pair<MultiIndex, MultiIndex>, Complex> a;
  for (const auto& c : array(list, "kernel coefficients"))
    a[{parse_multi_index(field(c, "m")), parse_multi_index(field(c, "n"))}] += parse_complex(field(c, "a"));
  if (a.empty()) schema("kernel needs at least one coefficient");
  const auto& first = a.begin()->first;
  return KernelCoefficients(first.first.size(), first.second.size(), std::move(a));
}

Json to_json(const KernelCoefficients& k) {
  if (auto n = k.bergman_truncation()) return Json{{"bergman", *n}};
  Json list = Json::array();
  for (const auto& [mn, a] : k.coefficients())
    list.push_back(Json{{"m", mn.first}, {"n", mn.second}, {"a", to_json(a)}});
  return Json{{"coefficients", std::move(list)}};
}

SeriesCoefficients parse_series(const Json& j) {
  SeriesCoefficients b;
  for (const auto& c : array(j, "series coefficients")) b[parse_multi_index(field(c, "m"))] += parse_complex(field(c, "b"));
  return b;
}

Json series_to_json(const SeriesCoefficients& b) {
  Json j = Json::array();
  for (const auto& [m, v] : b) j.push_back(Json{{"m", m}, {"b", to_json(v)}});
  return j;
}

Json table_to_json(const ElementTable& table) {
  Json j = Json::array();
  for (const auto& [s, v] : table) j.push_back(Json{{"s", to_json(s)}, {"value", to_json(v)}});
  return j;
}

Json to_json(const CovarianceVerdict& verdict) {
  Json j;
  if (const auto* pm = std::get_if<PointMassVerdict>(&verdict.outcome)) {
    j["verdict"] = "point_mass";
    j["c"] = to_json(pm->c);
    j["zeta"] = pm->zeta ? point_to_json(*pm->zeta) : Json(nullptr);
    j["max_residual"] = pm->max_residual;
    j["grid_order"] = verdict.grid_order ? Json(*verdict.grid_order) : Json(nullptr);
    j["grid_size"] = verdict.grid_size;
    j["multiplicativity_defect"] = pm->multiplicativity_defect;
    j["symbol_vanishes_on_support"] = pm->symbol_vanishes_on_support;
    j["certified"] = "relative_to_grid";
  } else if (const auto* npm = std::get_if<NotPointMassVerdict>(&verdict.outcome)) {
    j["verdict"] = "not_point_mass";
    j["witness_s"] = to_json(npm->witness_s);
    j["witness_t"] = to_json(npm->witness_t);
    j["residual"] = to_json(npm->residual);
    j["normalized_residual"] = npm->normalized_residual;
    j["grid_order"] = verdict.grid_order ? Json(*verdict.grid_order) : Json(nullptr);
    j["grid_size"] = verdict.grid_size;
    j["certified"] = "witness";
  } else {
    const auto& d = std::get<DegenerateVerdict>(verdict.outcome);
    j["verdict"] = "degenerate";
    j["case"] = std::string(to_string(d.which));
    j["grid_order"] = verdict.grid_order ? Json(*verdict.grid_order) : Json(nullptr);
    j["grid_size"] = verdict.grid_size;
  }
  return j;
}

std::string dump(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

}  // namespace covkit::json
