#include "covkit_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "covkit/applications.hpp"
#include "covkit/errors.hpp"
#include "covkit/json_io.hpp"
#include "covkit/laplace.hpp"
#include "covkit/pdbv.hpp"
#include "covkit/toeplitz.hpp"

namespace covkit::cli {

namespace {

using json::Json;

constexpr int kDefaultMatrixOrder = 12;
constexpr double kDefaultKernelRadius = 0.3;
constexpr double kDefaultKernelTolerance = 1e-10;

struct Flags {
  std::string scenario;
  std::optional<int> grid_order;
  std::optional<double> tol_res;
  std::optional<double> tol_mass;
  std::optional<double> rank_tol;
  std::optional<int> matrix_order;
  std::string format = "json";
};

struct Outcome {
  Json report;
  std::string summary;
  int exit_code = 0;
};

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

Json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open scenario file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    schema(std::string("scenario is not valid JSON: ") + e.what());
  }
}

const Json* find(const Json& doc, const char* key) {
  if (!doc.is_object()) return nullptr;
  auto it = doc.find(key);
  return it == doc.end() ? nullptr : &*it;
}

const Json& require(const Json& doc, const char* key) {
  if (const Json* j = find(doc, key)) return *j;
  schema(std::string("scenario is missing '") + key + "'");
}

double positive(const Json& j, const char* what) {
  if (!j.is_number() || !(j.get<double>() > 0.0)) schema(std::string(what) + " must be a positive number");
  return j.get<double>();
}

/// Reads the shared parts of a scenario on demand.
class Scenario {
 public:
  Scenario(Json doc, const Flags& flags) : doc_(std::move(doc)), flags_(flags) {
    if (!doc_.is_object()) schema("scenario must be a JSON object");
  }

  const Json& doc() const { return doc_; }

  SemigroupKind kind() const { return json::parse_semigroup(require(doc_, "semigroup")); }

  AtomicMeasure measure(const SemigroupKind& kind) const { return json::parse_measure(kind, require(doc_, "measure")); }

  Symbol symbol() const {
    if (const Json* j = find(doc_, "symbol")) return json::parse_symbol(*j);
    if (const Json* m = find(doc_, "measure"))
      if (const Json* j = find(*m, "symbol")) return json::parse_symbol(*j);
    return Symbol::one();
  }

  EvaluationGrid grid(const SemigroupKind& kind) const {
    if (flags_.grid_order) return EvaluationGrid::standard(kind, *flags_.grid_order);
    const Json* g = find(doc_, "grid");
    if (!g) return EvaluationGrid::standard(kind);
    if (const Json* elems = find(*g, "elements")) {
      if (!elems->is_array()) schema("grid.elements must be an array");
      std::vector<Element> out;
      for (const auto& e : *elems) out.push_back(json::parse_element(kind, e));
      return EvaluationGrid(kind, std::move(out));
    }
    if (const Json* order = find(*g, "order")) {
      if (!order->is_number_integer() || order->get<int>() < 0) schema("grid.order must be a non-negative integer");
      return EvaluationGrid::standard(kind, order->get<int>());
    }
    schema("grid needs 'order' or 'elements'");
  }

  Tolerances tolerances() const {
    Tolerances tol;
    if (const Json* t = find(doc_, "tolerances")) {
      if (!t->is_object()) schema("tolerances must be an object");
      if (const Json* v = find(*t, "tol_mass")) tol.mass = positive(*v, "tol_mass");
      if (const Json* v = find(*t, "tol_res")) tol.residual = positive(*v, "tol_res");
      if (const Json* v = find(*t, "rank_rel_tol")) tol.rank = positive(*v, "rank_rel_tol");
    }
    if (flags_.tol_mass) tol.mass = *flags_.tol_mass;
    if (flags_.tol_res) tol.residual = *flags_.tol_res;
    if (flags_.rank_tol) tol.rank = *flags_.rank_tol;
    return tol;
  }

  int matrix_order() const {
    if (flags_.matrix_order) return *flags_.matrix_order;
    if (const Json* n = find(doc_, "matrix_order")) {
      if (!n->is_number_integer() || n->get<int>() < 2) schema("matrix_order must be an integer >= 2");
      return n->get<int>();
    }
    return kDefaultMatrixOrder;
  }

 private:
  Json doc_;
  const Flags& flags_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os << std::setprecision(6) << '(' << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i)";
  return os.str();
}

std::string fmt(const CharacterPoint& z) {
  std::string out = "[";
  for (std::size_t i = 0; i < z.size(); ++i) out += (i ? ", " : "") + fmt(z[i]);
  return out + "]";
}

std::string fmt(const Element& e) { return json::to_json(e).dump(); }

Json nullable(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json grid_order_json(const EvaluationGrid& grid) { return grid.order() ? Json(*grid.order()) : Json(nullptr); }

// ---------------------------------------------------------------------------

Outcome cmd_transform(const Scenario& sc) {
  const auto kind = sc.kind();
  const auto mu = sc.measure(kind);
  const auto f = sc.symbol();
  const auto grid = sc.grid(kind);
  const auto table = PairFunction::tabulate(kind, grid.elements(), [&](const Element& s, const Element& t) {
    return laplace_transform(mu, f, s, t);
  });
  Outcome out;
  out.report = json::to_json(table);
  out.summary = "transform: " + std::to_string(grid.size()) + " x " + std::to_string(grid.size()) +
                " values, total mass " + fmt(total_mass(mu));
  return out;
}

Outcome cmd_covariance(const Scenario& sc) {
  const auto kind = sc.kind();
  const auto verdict = decide_covariance(sc.measure(kind), sc.symbol(), sc.grid(kind), sc.tolerances());
  Outcome out;
  out.report = json::to_json(verdict);
  const std::string grid = " on a grid of " + std::to_string(verdict.grid_size) + " elements";
  if (const auto* pm = std::get_if<PointMassVerdict>(&verdict.outcome)) {
    out.summary = "point_mass: c = " + fmt(pm->c) + ", zeta = " + (pm->zeta ? fmt(*pm->zeta) : "unresolved") +
                  ", max residual " + fmt(pm->max_residual) + grid + " (certified relative to the grid)";
    if (pm->symbol_vanishes_on_support) out.summary += "; F vanishes on part of the support";
  } else if (const auto* npm = std::get_if<NotPointMassVerdict>(&verdict.outcome)) {
    out.summary = "not_point_mass: witness (" + fmt(npm->witness_s) + ", " + fmt(npm->witness_t) + "), residual " +
                  fmt(npm->residual) + ", normalized " + fmt(npm->normalized_residual) + grid;
  } else {
    out.summary = "degenerate: " + std::string(to_string(std::get<DegenerateVerdict>(verdict.outcome).which)) + grid;
    out.exit_code = 2;
  }
  return out;
}

Outcome cmd_recover(const Scenario& sc) {
  const auto kind = sc.kind();
  const auto grid = sc.grid(kind);
  const auto tol = sc.tolerances();
  const auto rec = recover_point_mass(sc.measure(kind), sc.symbol(), grid, tol);
  const auto zeta = resolve_zeta(kind, rec.gamma, tol.residual);
  const double defect = multiplicativity_defect(rec.gamma, grid);
  Outcome out;
  out.report["c"] = json::to_json(rec.c);
  out.report["zeta"] = zeta ? json::point_to_json(*zeta) : Json(nullptr);
  out.report["multiplicativity_defect"] = defect;
  out.report["grid_order"] = grid_order_json(grid);
  out.report["grid_size"] = grid.size();
  out.report["gamma"] = json::table_to_json(rec.gamma);
  out.summary = "recover: c = " + fmt(rec.c) + ", zeta = " + (zeta ? fmt(*zeta) : "unresolved") +
                ", multiplicativity defect " + fmt(defect);
  return out;
}

Outcome cmd_toeplitz(const Scenario& sc) {
  const auto kind = sc.kind();
  const auto mu = sc.measure(kind);
  const auto f = sc.symbol();
  const auto grid = sc.grid(kind);
  const int n = sc.matrix_order();
  const double rank_tol = sc.tolerances().rank;
  Json rows = Json::array();
  int disagreements = 0;
  double worst_ratio = 0.0;
  for (const auto& s : grid.elements()) {
    const auto nu = disc_measure(mu, f, s);
    const Eigen::VectorXd sigma = singular_values(toeplitz_matrix(nu, n));
    const auto luecking = luecking_check(nu, n, rank_tol);
    const double ratio = sigma(0) == 0.0 ? 0.0 : sigma(1) / sigma(0);
    worst_ratio = std::max(worst_ratio, ratio);
    disagreements += luecking.agree ? 0 : 1;
    Json row;
    row["s"] = json::to_json(s);
    row["singular_values"] = Json(std::vector<double>(sigma.data(), sigma.data() + sigma.size()));
    row["rank"] = luecking.rank;
    row["atom_count"] = luecking.atom_count;
    row["agree"] = luecking.agree;
    row["rank_one_ratio"] = ratio;
    rows.push_back(std::move(row));
  }
  Outcome out;
  out.report["matrix_order"] = n;
  out.report["rank_tol"] = rank_tol;
  out.report["rows"] = std::move(rows);
  out.summary = "toeplitz: " + std::to_string(grid.size()) + " elements, order " + std::to_string(n) +
                ", rank/atom disagreements " + std::to_string(disagreements) + ", max sigma2/sigma1 " +
                fmt(worst_ratio);
  return out;
}

Outcome cmd_prony(const Scenario& sc) {
  const auto kind = sc.kind();
  const auto mu = sc.measure(kind);
  const auto f = sc.symbol();
  const auto grid = sc.grid(kind);
  const auto tol = sc.tolerances();
  const int n = sc.matrix_order();

  std::optional<PointMassRecovery> rec;
  try {
    rec = recover_point_mass(mu, f, grid, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FMuIntegralZero) throw;
  }

  Json rows = Json::array();
  double max_error = 0.0;
  for (const auto& s : grid.elements()) {
    const auto nu = disc_measure(mu, f, s);
    Json row;
    row["s"] = json::to_json(s);
    std::optional<Complex> gamma_prony;
    try {
      const auto prony = prony_recover(nu, n, n - 1, tol.rank);
      Json atoms = Json::array();
      for (const auto& a : prony.atoms) atoms.push_back(Json{{"a", json::to_json(a.a)}, {"m", json::to_json(a.m)}});
      row["rank"] = prony.rank;
      row["atoms"] = std::move(atoms);
      row["reconstruction_residual"] = prony.reconstruction_residual;
      if (prony.atoms.size() == 1) gamma_prony = 2.0 * (1.0 + sup_norm(mu, s)) * prony.atoms.front().a;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RankDeficientPencil) throw;
      row["rank"] = numerical_rank(moment_matrix(nu, n), tol.rank);
      row["atoms"] = nullptr;
      row["reconstruction_residual"] = nullptr;
    }
    row["gamma_prony"] = gamma_prony ? json::to_json(*gamma_prony) : Json(nullptr);
    double error = std::numeric_limits<double>::infinity();
    if (rec) {
      const Complex g = rec->gamma.at(s);
      row["gamma_laplace"] = json::to_json(g);
      if (gamma_prony) error = std::abs(*gamma_prony - g);
    } else {
      row["gamma_laplace"] = nullptr;
    }
    row["error"] = nullable(error);
    max_error = std::max(max_error, error);
    rows.push_back(std::move(row));
  }
  Outcome out;
  out.report["matrix_order"] = n;
  out.report["max_route_error"] = nullable(max_error);
  out.report["rows"] = std::move(rows);
  out.summary = "prony: " + std::to_string(grid.size()) + " elements, max route disagreement " +
                (std::isfinite(max_error) ? fmt(max_error) : std::string("unbounded (some nu_s is not a single atom)"));
  return out;
}

std::vector<ElementPair> parse_points(const SemigroupKind& kind, const Json& j) {
  if (!j.is_array()) schema("pd.points must be an array of [s, t] pairs");
  std::vector<ElementPair> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) schema("pd.points entries are [s, t] pairs");
    out.emplace_back(json::parse_element(kind, p[0]), json::parse_element(kind, p[1]));
  }
  return out;
}

Outcome cmd_pd(const Scenario& sc) {
  const auto kind = sc.kind();
  const auto grid = sc.grid(kind);
  static const Json kEmpty = Json::object();
  const Json* pd_ptr = find(sc.doc(), "pd");
  const Json& pd = pd_ptr ? *pd_ptr : kEmpty;

  const PairFunction f = [&] {
    if (const Json* pf = find(pd, "pair_function")) return json::parse_pair_function(kind, *pf);
    return laplace_pair_function(sc.measure(kind), grid.closure().elements());
  }();

  std::vector<ElementPair> points;
  if (const Json* p = find(pd, "points")) {
    points = parse_points(kind, *p);
  } else {
    for (const auto& s : grid.elements())
      for (const auto& t : grid.elements()) points.emplace_back(s, t);
  }
  if (points.empty()) schema("pd.points must not be empty");

  std::vector<ShiftCombination> lambda;
  if (const Json* l = find(pd, "lambda")) {
    if (!l->is_array()) schema("pd.lambda must be an array of shift combinations");
    for (const auto& op : *l) lambda.push_back(json::parse_shift_combination(kind, op));
  } else if (grid.size() > 1) {
    lambda = admissible_family(kind, {grid.elements()[1], identity(kind)});
  } else {
    lambda = {ShiftCombination::identity(kind)};
  }

  const auto result = positive_definite_check(f, points);
  const Element e = identity(kind);
  const Complex fee = f(e, e);
  std::optional<double> defect;
  if (fee != Complex{}) {
    std::map<ElementPair, Complex> scaled;
    for (const auto& [st, v] : f.values()) scaled[st] = v / fee;
    defect = semicharacter_defect(PairFunction(kind, std::vector<Element>(f.grid().begin(), f.grid().end()), scaled),
                                  points);
  }
  const double bv = bv_norm(f, lambda);

  Outcome out;
  Json pdj;
  pdj["min_eigenvalue"] = result.min_eigenvalue;
  pdj["trace"] = result.trace;
  pdj["asymmetry"] = result.asymmetry;
  pdj["is_pd"] = result.is_pd;
  out.report["points"] = points.size();
  out.report["positive_definite"] = std::move(pdj);
  out.report["semicharacter_defect"] = defect ? Json(*defect) : Json(nullptr);
  out.report["lambda_size"] = lambda.size();
  out.report["bv_norm"] = bv;
  out.summary = std::string("pd: ") + (result.is_pd ? "positive definite" : "not positive definite") +
                " (min eigenvalue " + fmt(result.min_eigenvalue) + " over " + std::to_string(points.size()) +
                " points), semicharacter defect " + (defect ? fmt(*defect) : std::string("undefined")) +
                ", bv norm " + fmt(bv);
  return out;
}

Outcome cmd_random_vector(const Scenario& sc, const Flags& flags) {
  const auto rv = json::parse_random_vector(require(sc.doc(), "random_vector"));
  int order = EvaluationGrid::default_order(SemigroupKind::nat_add(static_cast<int>(rv.dimension())));
  if (flags.grid_order) {
    order = *flags.grid_order;
  } else if (const Json* g = find(sc.doc(), "grid")) {
    if (const Json* o = find(*g, "order")) {
      if (!o->is_number_integer() || o->get<int>() < 0) schema("grid.order must be a non-negative integer");
      order = o->get<int>();
    }
  }
  const auto v = decide_constant_vector(rv, order, sc.tolerances());
  Outcome out;
  if (v.covariance.is_degenerate()) {
    out.report["verdict"] = "degenerate";
    out.exit_code = 2;
  } else {
    out.report["verdict"] = v.constant ? "constant" : "not_constant";
  }
  out.report["value"] = v.value ? json::point_to_json(*v.value) : Json(nullptr);
  out.report["witness_m"] = v.witness ? Json(v.witness->first) : Json(nullptr);
  out.report["witness_n"] = v.witness ? Json(v.witness->second) : Json(nullptr);
  out.report["residual"] = json::to_json(v.residual);
  out.report["max_order"] = order;
  out.report["covariance"] = json::to_json(v.covariance);
  if (v.constant) {
    out.summary = "random-vector: X is almost surely constant, X = " + fmt(*v.value);
  } else if (v.witness) {
    out.summary = "random-vector: X is not constant; moment condition fails at m = " +
                  Json(v.witness->first).dump() + ", n = " + Json(v.witness->second).dump() + " with residual " +
                  fmt(v.residual);
  } else {
    out.summary = "random-vector: degenerate law measure";
  }
  return out;
}

Outcome cmd_kernel(const Scenario& sc, const Flags& flags) {
  const auto k = json::parse_kernel(require(sc.doc(), "kernel"));
  const auto f = json::parse_series(require(sc.doc(), "f"));
  const auto kind = find(sc.doc(), "semigroup") ? sc.kind() : SemigroupKind::nat_add(static_cast<int>(k.w_dim()));
  const auto mu = sc.measure(kind);

  double radius = kDefaultKernelRadius;
  double tolerance = kDefaultKernelTolerance;
  if (const Json* g = find(sc.doc(), "kernel_grid"))
    if (const Json* r = find(*g, "radius")) radius = positive(*r, "kernel_grid.radius");
  if (const Json* t = find(sc.doc(), "kernel_tolerance")) tolerance = positive(*t, "kernel_tolerance");
  if (flags.tol_res) tolerance = *flags.tol_res;

  const auto grid = polydisc_grid(k.z_dim(), radius);
  const auto v = kernel_recover(k, f, mu, grid, tolerance, sc.tolerances());

  double w_max = 0.0;
  for (const auto& a : mu.atoms())
    for (const auto& c : a.point) w_max = std::max(w_max, std::abs(c));
  const auto tail = kernel_tail_bound(k, radius, w_max);

  Outcome out;
  out.report["verdict"] = std::string(to_string(v.tag));
  out.report["max_residual"] = v.max_residual;
  out.report["witness_z"] = json::point_to_json(v.witness_z);
  out.report["c"] = json::to_json(v.c);
  out.report["zeta"] = v.zeta ? json::point_to_json(*v.zeta) : Json(nullptr);
  out.report["phase"] = v.phase;
  out.report["coefficient_mismatch"] = v.coefficient_mismatch;
  out.report["grid_radius"] = radius;
  out.report["grid_size"] = grid.size();
  out.report["tolerance"] = tolerance;
  out.report["tail_bound"] = tail ? Json(*tail) : Json(nullptr);
  out.report["note"] = v.note;
  out.summary = "kernel: " + std::string(to_string(v.tag)) + ", max residual " + fmt(v.max_residual);
  if (v.tag == KernelVerdictTag::Extremal)
    out.summary += ", c = " + fmt(v.c) + ", zeta = " + fmt(*v.zeta) + ", phase " + fmt(v.phase);
  if (!v.note.empty()) out.summary += " (" + v.note + ")";
  if (v.tag == KernelVerdictTag::Degenerate) out.exit_code = 2;
  return out;
}

void emit_error(const Flags& flags, ErrorCode code, const std::string& message, std::ostream& out,
                std::ostream& err) {
  if (flags.format == "json") {
    Json j;
    j["error"] = Json{{"code", std::string(to_string(code))}, {"message", message}};
    out << json::dump(j);
  }
  err << "error (" << to_string(code) << "): " << message << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures for the covariance equation on semigroups", "covkit"};
  app.require_subcommand(1);
  Flags flags;

  using Handler = std::function<Outcome(const Scenario&)>;
  const std::vector<std::tuple<std::string, std::string, Handler>> commands{
      {"transform", "tabulate the Laplace transform of F mu over the grid", cmd_transform},
      {"covariance", "decide whether the covariance equation holds", cmd_covariance},
      {"recover", "recover c, gamma and zeta from the transform ratios", cmd_recover},
      {"toeplitz", "singular values, rank and rank-one checks of the disc measures", cmd_toeplitz},
      {"prony", "matrix-pencil atom recovery and route agreement", cmd_prony},
      {"pd", "positive definiteness, semicharacter defect and BV norm", cmd_pd},
      {"random-vector", "decide whether X is almost surely constant",
       [&flags](const Scenario& sc) { return cmd_random_vector(sc, flags); }},
      {"kernel", "check the extremal kernel equation and recover (c, zeta)",
       [&flags](const Scenario& sc) { return cmd_kernel(sc, flags); }},
  };

  for (const auto& [name, help, handler] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("scenario", flags.scenario, "scenario JSON file")->required();
    sub->add_option("--grid-order", flags.grid_order, "order of the standard grid")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol-res", flags.tol_res, "relative residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-mass", flags.tol_mass, "relative mass tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--rank-tol", flags.rank_tol, "relative singular value cutoff")->check(CLI::PositiveNumber);
    sub->add_option("--matrix-order", flags.matrix_order, "moment and Toeplitz matrix order")
        ->check(CLI::Range(2, 200));
    sub->add_option("--format", flags.format, "report format")->check(CLI::IsMember({"json", "text"}));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const auto* chosen = app.get_subcommands().front();
  const auto it = std::find_if(commands.begin(), commands.end(),
                               [&](const auto& c) { return std::get<0>(c) == chosen->get_name(); });
  try {
    const Scenario sc(load(flags.scenario), flags);
    const Outcome result = std::get<2>(*it)(sc);
    if (flags.format == "json") {
      out << json::dump(result.report);
      err << result.summary << '\n';
    } else {
      out << result.summary << '\n';
    }
    return result.exit_code;
  } catch (const Error& e) {
    emit_error(flags, e.code(), e.what(), out, err);
  } catch (const std::exception& e) {
    emit_error(flags, ErrorCode::InvalidArgument, e.what(), out, err);
  }
  return 1;
}

}  // namespace covkit::cli
