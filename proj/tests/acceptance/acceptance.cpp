// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "covkit/applications.hpp"
#include "covkit/laplace.hpp"
#include "covkit/pdbv.hpp"
#include "covkit/toeplitz.hpp"
#include "covkit_cli/cli.hpp"
#include "support/generators.hpp"

using namespace covkit;

namespace {

constexpr int kInstances = 100;
constexpr int kMatrixOrder = 12;
constexpr double kRankTol = 1e-8;

struct Instance {
  AtomicMeasure mu;
  Symbol f;
  CharacterPoint zeta;  // suite 1 only
  EvaluationGrid grid;
  CovarianceVerdict verdict;
};

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  failures += ok ? 0 : 1;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

SemigroupKind kind_for(int i) { return SemigroupKind::nat_add(1 + i % 3); }

CovarianceVerdict decide(const AtomicMeasure& mu, const Symbol& f, const EvaluationGrid& grid) {
  return decide_covariance(mu, f, grid);
}

std::vector<Instance> suite_one(gen::Rng& rng, double& seconds) {
  std::vector<Instance> out;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < kInstances; ++i) {
    const auto kind = kind_for(i);
    const auto zeta = gen::polydisc_point(rng, kind.point_dim(), 1.0);
    const Complex c = rng.annulus(0.1, 10.0);
    Symbol f = Symbol::one();
    do {
      f = gen::random_polynomial(rng, kind.point_dim());
    } while (std::abs(f(zeta)) < 0.1);
    AtomicMeasure mu(kind, {{zeta, c}});
    auto grid = EvaluationGrid::standard(kind);
    auto verdict = decide(mu, f, grid);
    out.push_back({std::move(mu), std::move(f), zeta, std::move(grid), std::move(verdict)});
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<Instance> suite_two(gen::Rng& rng) {
  std::vector<Instance> out;
  for (int i = 0; i < kInstances; ++i) {
    const auto kind = kind_for(i);
    const int k = 2 + i % 4;
    std::vector<Atom> atoms;
    for (;;) {
      atoms.clear();
      double abs_mass = 0.0;
      Complex mass{};
      for (const auto& p : gen::separated_points(rng, k, kind.point_dim(), 1.0, 0.1)) {
        const Complex w = rng.annulus(0.1, 1.0);
        atoms.push_back({p, w});
        abs_mass += std::abs(w);
        mass += w;
      }
      if (std::abs(mass) >= 0.05 * abs_mass) break;
    }
    AtomicMeasure mu(kind, atoms);
    auto grid = EvaluationGrid::standard(kind);
    auto verdict = decide(mu, Symbol::one(), grid);
    out.push_back({std::move(mu), Symbol::one(), {}, std::move(grid), std::move(verdict)});
  }
  return out;
}

void criterion_1(const std::vector<Instance>& s1, double seconds) {
  int point_mass = 0;
  double worst = 0.0;
  for (const auto& in : s1) {
    if (const auto* pm = std::get_if<PointMassVerdict>(&in.verdict.outcome)) {
      ++point_mass;
      worst = std::max(worst, pm->max_residual);
    }
  }
  report(1, point_mass == kInstances && worst <= 1e-10 && seconds <= 5.0,
         std::to_string(point_mass) + "/100 point_mass, max normalized residual " + sci(worst) + ", " +
             sci(seconds) + " s");
}

void criterion_2(const std::vector<Instance>& s2) {
  int ok = 0;
  double weakest = INFINITY;
  for (const auto& in : s2) {
    if (const auto* npm = std::get_if<NotPointMassVerdict>(&in.verdict.outcome)) {
      weakest = std::min(weakest, npm->normalized_residual);
      if (npm->normalized_residual >= 1e-6) ++ok;
    }
  }
  report(2, ok == kInstances,
         std::to_string(ok) + "/100 not_point_mass with witness >= 1e-6, weakest witness " + sci(weakest));
}

void criterion_3(const std::vector<Instance>& s1) {
  double gamma_err = 0.0, defect = 0.0;
  int c_exact = 0, checked = 0;
  for (const auto& in : s1) {
    const auto* pm = std::get_if<PointMassVerdict>(&in.verdict.outcome);
    if (!pm) continue;
    ++checked;
    for (const auto& s : in.grid.elements())
      gamma_err = std::max(gamma_err, std::abs(pm->gamma.at(s) - char_eval(in.mu.kind(), in.zeta, s)));
    defect = std::max(defect, pm->multiplicativity_defect);
    c_exact += pm->c == total_mass(in.mu) ? 1 : 0;
  }
  report(3, checked > 0 && gamma_err <= 1e-8 && defect <= 1e-8 && c_exact == checked,
         "max |gamma - rho_zeta| " + sci(gamma_err) + ", max defect " + sci(defect) + ", c exact " +
             std::to_string(c_exact) + "/" + std::to_string(checked));
}

void criterion_4(const std::vector<Instance>& s1, const std::vector<Instance>& s2) {
  int agree = 0, total = 0;
  for (const auto* suite : {&s1, &s2}) {
    for (const auto& in : *suite) {
      ++total;
      const auto tv = decide(total_variation(in.mu), in.f, in.grid);
      agree += tv.outcome.index() == in.verdict.outcome.index() ? 1 : 0;
    }
  }
  report(4, agree == total, std::to_string(agree) + "/" + std::to_string(total) + " verdicts agree for mu and |mu|");
}

void criterion_5(gen::Rng& rng) {
  int hits = 0;
  std::string log;
  for (int i = 0; i < kInstances; ++i) {
    const int k = 1 + i % 6;
    std::vector<DiscAtom> atoms;
    for (const auto& p : gen::separated_points(rng, k, 1, 0.45, 0.1)) atoms.push_back({p[0], rng.annulus(0.1, 1.0)});
    const auto m = moment_matrix(DiscMeasure(atoms), kMatrixOrder);
    const int rank = numerical_rank(m, kRankTol);
    if (rank == k) {
      ++hits;
    } else {
      const auto sv = singular_values(m);
      log += " [instance " + std::to_string(i) + ": k=" + std::to_string(k) + " rank=" + std::to_string(rank) +
             " sigma_k/sigma_1=" + sci(sv(k - 1) / sv(0)) + "]";
    }
  }
  report(5, hits >= 99, std::to_string(hits) + "/100 ranks equal atom count" + log);
}

void criterion_6(const std::vector<Instance>& s1, const std::vector<Instance>& s2) {
  double worst_point = 0.0;
  for (const auto& in : s1)
    for (const auto& s : in.grid.elements())
      worst_point = std::max(worst_point, rank_one_check(in.mu, in.f, s, kMatrixOrder));
  int separated = 0;
  double weakest = INFINITY;
  int weakest_atoms = 0;
  for (const auto& in : s2) {
    double best = 0.0;
    for (const auto& s : in.grid.elements()) best = std::max(best, rank_one_check(in.mu, in.f, s, kMatrixOrder));
    if (best >= 1e-4) ++separated;
    if (best < weakest) {
      weakest = best;
      weakest_atoms = static_cast<int>(in.mu.size());
    }
  }
  report(6, worst_point <= 1e-10 && separated == kInstances,
         "suite 1 max sigma2/sigma1 " + sci(worst_point) + "; suite 2 " + std::to_string(separated) +
             "/100 with some s >= 1e-4, weakest " + sci(weakest) + " (" + std::to_string(weakest_atoms) + " atoms)");
}

void criterion_7(const std::vector<Instance>& s1) {
  double worst = 0.0;
  for (const auto& in : s1)
    for (const auto& row : route_agreement(in.mu, in.f, in.grid, kMatrixOrder, kRankTol))
      worst = std::max(worst, row.error);
  report(7, worst <= 1e-8, "max |gamma_prony - gamma_laplace| " + sci(worst));
}

std::vector<MultiIndex> indices_up_to(std::size_t dim, unsigned degree) {
  std::vector<MultiIndex> out;
  MultiIndex m(dim, 0u);
  for (;;) {
    unsigned total = 0;
    for (auto v : m) total += v;
    if (total <= degree) out.push_back(m);
    std::size_t i = 0;
    while (i < dim && ++m[i] > degree) m[i++] = 0;
    if (i == dim) break;
  }
  return out;
}

void criterion_8(gen::Rng& rng) {
  int constant_ok = 0;
  double worst_residual = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 1 + i % 2;
    const auto x = gen::polydisc_point(rng, d, 1.0);
    std::vector<Outcome> outcomes;
    for (;;) {
      outcomes.clear();
      Complex ey{};
      for (int j = 0; j < 4; ++j) {
        const Complex y = rng.disc(1.0);
        outcomes.push_back({0.25, x, y});
        ey += 0.25 * y;
      }
      if (std::abs(ey) >= 0.1) break;
    }
    const DiscreteRandomVector rv(outcomes);
    const auto v = decide_constant_vector(rv, 3);
    const auto idx = indices_up_to(d, 3);
    for (const auto& m : idx)
      for (const auto& n : idx) worst_residual = std::max(worst_residual, std::abs(moment_condition_residual(rv, m, n)));
    constant_ok += v.constant ? 1 : 0;
  }

  int two_ok = 0;
  double weakest = INFINITY;
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 1 + i % 2;
    const auto pts = gen::separated_points(rng, 2, d, 1.0, 0.1);
    const double p = rng.uniform(0.1, 0.9);
    const DiscreteRandomVector rv({{p, pts[0], 1.0}, {1.0 - p, pts[1], 1.0}});
    const auto v = decide_constant_vector(rv, 3);
    if (!v.constant && v.witness) {
      weakest = std::min(weakest, std::abs(v.residual));
      if (std::abs(v.residual) >= 1e-4) ++two_ok;
    }
  }
  report(8, constant_ok == 50 && worst_residual <= 1e-12 && two_ok == 50,
         "constant X: " + std::to_string(constant_ok) + "/50, max residual " + sci(worst_residual) +
             "; two-point X: " + std::to_string(two_ok) + "/50 not constant, weakest witness " + sci(weakest));
}

void criterion_9(gen::Rng& rng) {
  const auto k = KernelCoefficients::bergman(24);
  const auto grid = polydisc_grid(1, 0.3);
  const auto kind = SemigroupKind::nat_add(1);
  int extremal = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex zeta = rng.disc(0.2);
    const double c = rng.uniform(0.1, 10.0);
    const Complex rotation = std::polar(std::sqrt(c), rng.uniform(-std::numbers::pi, std::numbers::pi));
    SeriesCoefficients f;
    for (const auto& [m, b] : k.column({std::conj(zeta)})) f[m] = rotation * b;
    const auto v = kernel_recover(k, f, AtomicMeasure(kind, {{{zeta}, c}}), grid, 1e-8);
    worst = std::max(worst, v.max_residual);
    const bool located = v.zeta && std::abs((*v.zeta)[0] - zeta) <= 1e-8 && std::abs(v.c - c) <= 1e-8 * c;
    extremal += v.tag == KernelVerdictTag::Extremal && located ? 1 : 0;
  }
  int rejected = 0;
  for (int i = 0; i < 50; ++i) {
    const auto pts = gen::separated_points(rng, 2, 1, 0.2, 0.1);
    const double p = rng.uniform(0.1, 0.9);
    const AtomicMeasure mu(kind, {{pts[0], p}, {pts[1], 1.0 - p}});
    const Complex centre = p * pts[0][0] + (1.0 - p) * pts[1][0];
    const auto v = kernel_recover(k, k.column({std::conj(centre)}), mu, grid, 1e-8);
    rejected += v.tag == KernelVerdictTag::NotExtremal ? 1 : 0;
  }
  report(9, extremal == 50 && worst <= 1e-8 && rejected == 50,
         "point masses: " + std::to_string(extremal) + "/50 extremal, max residual " + sci(worst) +
             "; two atoms: " + std::to_string(rejected) + "/50 not extremal");
}

void criterion_10(gen::Rng& rng) {
  const std::vector<SemigroupKind> kinds{SemigroupKind::nat_add(2), SemigroupKind::nat_mult(2),
                                         SemigroupKind::half_line()};
  auto random_element = [&](const SemigroupKind& kind) {
    switch (kind.tag()) {
      case SemigroupTag::NatAdd: {
        MultiIndex m(kind.point_dim());
        for (auto& v : m) v = static_cast<unsigned>(rng.integer(0, 3));
        return Element::multi_index(m);
      }
      case SemigroupTag::NatMult: {
        std::uint64_t n = 1;
        for (std::size_t j = 0; j < kind.point_dim(); ++j)
          for (int e = rng.integer(0, 3); e > 0; --e) n *= nth_prime(j);
        return Element::integer(n);
      }
      case SemigroupTag::HalfLine: break;
    }
    return Element::real(rng.uniform(0.0, 3.0));
  };

  int partitions = 0;
  for (int i = 0; i < 20; ++i) {
    const auto& kind = kinds[i % 3];
    ShiftCombination sum;
    for (const auto& t : admissible_family(kind, {random_element(kind), random_element(kind)})) sum += t;
    partitions += sum == ShiftCombination::identity(kind) ? 1 : 0;
  }

  double defect = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto& kind = kinds[i % 3];
    CharacterPoint z = gen::polydisc_point(rng, kind.point_dim(), 1.0);
    if (kind.tag() == SemigroupTag::HalfLine) z = {Complex{rng.uniform(0.0, 2.0), rng.uniform(-3.0, 3.0)}};
    const auto grid = EvaluationGrid::standard(kind, 2);
    const auto eta = semicharacter(kind, z, grid.closure().elements());
    std::vector<ElementPair> points;
    for (const auto& s : grid.elements())
      for (const auto& t : grid.elements()) points.emplace_back(s, t);
    defect = std::max(defect, semicharacter_defect(eta, points));
  }

  int pd = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& kind = kinds[i % 3];
    std::vector<Atom> atoms;
    const int count = rng.integer(1, 5);
    for (int j = 0; j < count; ++j) {
      CharacterPoint z = gen::polydisc_point(rng, kind.point_dim(), 1.0);
      if (kind.tag() == SemigroupTag::HalfLine) z = {Complex{rng.uniform(0.0, 2.0), rng.uniform(-3.0, 3.0)}};
      atoms.push_back({z, Complex{rng.uniform(0.1, 1.0), 0.0}});
    }
    const AtomicMeasure mu(kind, atoms);
    const auto grid = EvaluationGrid::standard(kind, 2);
    const auto elems = grid.elements();
    std::vector<ElementPair> points;
    while (points.size() < 6) {
      ElementPair p{elems[rng.integer(0, static_cast<int>(elems.size()) - 1)],
                    elems[rng.integer(0, static_cast<int>(elems.size()) - 1)]};
      if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(p);
    }
    pd += positive_definite_check(laplace_pair_function(mu, grid.closure().elements()), points).is_pd ? 1 : 0;
  }
  report(10, partitions == 20 && defect <= 1e-12 && pd == 50,
         "partition of identity " + std::to_string(partitions) + "/20, max semicharacter defect " + sci(defect) +
             ", positive definite " + std::to_string(pd) + "/50");
}

void criterion_11() {
  const std::filesystem::path dir = COVKIT_GOLDEN_DIR;
  const std::vector<std::string> names{"transform",        "covariance_two_atom", "recover_point_mass",
                                       "toeplitz_two_atom", "prony_point_mass",   "pd_signed",
                                       "random_vector",    "kernel_extremal"};
  int equal = 0;
  std::string missing;
  for (const auto& name : names) {
    std::ifstream cmd(dir / (name + ".cmd"));
    std::vector<std::string> args;
    for (std::string tok; cmd >> tok;) args.push_back(tok);
    if (args.size() < 2) {
      missing += " " + name;
      continue;
    }
    args[1] = (dir / args[1]).string();
    std::ifstream expected_in(dir / (name + ".expected.json"));
    std::stringstream expected;
    expected << expected_in.rdbuf();
    bool same = true;
    for (int rep = 0; rep < 2; ++rep) {
      std::ostringstream out, err;
      (void)cli::run(args, out, err);
      same = same && out.str() == expected.str();
    }
    if (same) ++equal;
    else missing += " " + name;
  }
  report(11, equal == static_cast<int>(names.size()),
         std::to_string(equal) + "/" + std::to_string(names.size()) +
             " golden reports byte-identical across all subcommands" + (missing.empty() ? "" : ", mismatched:" + missing));
}

}  // namespace

int main() {
  gen::Rng rng(20240917);
  double seconds = 0.0;
  const auto s1 = suite_one(rng, seconds);
  const auto s2 = suite_two(rng);

  criterion_1(s1, seconds);
  criterion_2(s2);
  criterion_3(s1);
  criterion_4(s1, s2);
  criterion_5(rng);
  criterion_6(s1, s2);
  criterion_7(s1);
  criterion_8(rng);
  criterion_9(rng);
  criterion_10(rng);
  criterion_11();
  return failures == 0 ? 0 : 1;
}
