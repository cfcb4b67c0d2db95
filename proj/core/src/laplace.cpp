#include "covkit/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "covkit/errors.hpp"

namespace covkit {

namespace {

// Values F(z_k) rho_k(s_i) for every atom k and grid element i.
struct SymbolCharacterTable {
  std::vector<Complex> weights;
  std::vector<std::vector<Complex>> values;  // [k][i]
  double max_modulus = 0.0;
};

SymbolCharacterTable tabulate(const AtomicMeasure& mu, const Symbol& f, std::span<const Element> elements) {
  SymbolCharacterTable table;
  for (const auto& atom : mu.atoms()) {
    const Complex fz = f(atom.point);
    std::vector<Complex> row;
    row.reserve(elements.size());
    for (const auto& s : elements) {
      const Complex v = fz * char_eval(mu.kind(), atom.point, s);
      table.max_modulus = std::max(table.max_modulus, std::abs(v));
      row.push_back(v);
    }
    table.weights.push_back(atom.weight);
    table.values.push_back(std::move(row));
  }
  return table;
}

}  // namespace

Complex laplace_transform(const AtomicMeasure& mu, const Element& s, const Element& t) {
  Complex sum{0.0, 0.0};
  for (const auto& atom : mu.atoms()) {
    sum += atom.weight * char_eval(mu.kind(), atom.point, s) * std::conj(char_eval(mu.kind(), atom.point, t));
  }
  return sum;
}

Complex laplace_transform(const AtomicMeasure& mu, const Symbol& f, const Element& s, const Element& t,
                          SymbolMode mode) {
  return laplace_transform(apply_symbol(mu, f, mode), s, t);
}

Complex covariance_residual(const AtomicMeasure& mu, const Symbol& f, const Element& s, const Element& t) {
  const Element e = identity(mu.kind());
  return total_mass(mu) * laplace_transform(mu, f, s, t, SymbolMode::AbsFSquared) -
         laplace_transform(mu, f, s, e, SymbolMode::F) * laplace_transform(mu, f, e, t, SymbolMode::ConjF);
}

double residual_scale(const AtomicMeasure& mu, const Symbol& f, const EvaluationGrid& grid) {
  const auto table = tabulate(mu, f, grid.elements());
  const double mass = total_abs_mass(mu);
  return mass * mass * table.max_modulus * table.max_modulus;
}

std::string_view to_string(DegenerateCase c) {
  switch (c) {
    case DegenerateCase::MassZeroEq3Holds: return "mass_zero_eq3_holds";
    case DegenerateCase::MassZeroEq4Holds: return "mass_zero_eq4_holds";
    case DegenerateCase::MassZeroNeitherHolds: return "mass_zero_neither_holds";
    case DegenerateCase::FMuZero: return "f_mu_zero";
  }
  return "unknown";
}

DegenerateCase degenerate_check(const AtomicMeasure& mu, const Symbol& f, const EvaluationGrid& grid,
                                const Tolerances& tol) {
  const double abs_mass = total_abs_mass(mu);
  if (std::abs(total_mass(mu)) >= tol.mass * abs_mass && abs_mass > 0.0)
    throw Error(ErrorCode::InvalidArgument, "degenerate_check needs a negligible total mass");

  const auto table = tabulate(mu, f, grid.elements());
  const double bound = tol.residual * abs_mass * table.max_modulus;
  bool eq3 = true;
  bool eq4 = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Complex forward{0.0, 0.0};
    Complex conjugate{0.0, 0.0};
    for (std::size_t k = 0; k < table.weights.size(); ++k) {
      forward += table.weights[k] * table.values[k][i];
      conjugate += table.weights[k] * std::conj(table.values[k][i]);
    }
    if (std::abs(forward) > bound) eq3 = false;
    if (std::abs(conjugate) > bound) eq4 = false;
  }
  if (eq3) return DegenerateCase::MassZeroEq3Holds;
  if (eq4) return DegenerateCase::MassZeroEq4Holds;
  return DegenerateCase::MassZeroNeitherHolds;
}

PointMassRecovery recover_point_mass(const AtomicMeasure& mu, const Symbol& f, const EvaluationGrid& grid,
                                     const Tolerances& tol) {
  const Complex mass = total_mass(mu);
  if (std::abs(mass) < tol.mass * total_abs_mass(mu))
    throw Error(ErrorCode::InvalidArgument, "point-mass recovery needs a non-negligible total mass");

  const AtomicMeasure f_mu = apply_symbol(mu, f, SymbolMode::F);
  const Element e = identity(mu.kind());
  const Complex base = laplace_transform(f_mu, e, e);
  const double f_mass = total_abs_mass(f_mu);
  if (f_mass == 0.0 || std::abs(base) < tol.mass * f_mass)
    throw Error(ErrorCode::FMuIntegralZero, "int F dmu vanishes; gamma is undefined");

  PointMassRecovery out{mass, {}};
  const EvaluationGrid closed = grid.closure();
  for (const auto& s : closed.elements()) out.gamma.emplace(s, laplace_transform(f_mu, s, e) / base);
  out.gamma[e] = Complex{1.0, 0.0};
  return out;
}

double multiplicativity_defect(const ElementTable& gamma, const EvaluationGrid& grid) {
  auto lookup = [&](const Element& s) {
    auto it = gamma.find(s);
    if (it == gamma.end()) throw Error(ErrorCode::MissingGridValue, "gamma has no value at " + to_string(s));
    return it->second;
  };
  double worst = 0.0;
  for (const auto& s : grid.elements()) {
    for (const auto& t : grid.elements()) {
      const Complex defect = lookup(combine(grid.kind(), s, t)) - lookup(s) * lookup(t);
      worst = std::max(worst, std::abs(defect));
    }
  }
  return worst;
}

Complex factorization_residual(const PairFunction& f, const Element& s, const Element& t) {
  const Element e = identity(f.kind());
  return f(e, e) * f(s, t) - f(s, e) * f(e, t);
}

PairFunction laplace_pair_function(const AtomicMeasure& mu, std::span<const Element> elements) {
  return PairFunction::tabulate(mu.kind(), elements,
                                [&](const Element& s, const Element& t) { return laplace_transform(mu, s, t); });
}

std::optional<CharacterPoint> resolve_zeta(const SemigroupKind& kind, const ElementTable& gamma,
                                           double tolerance) {
  auto find = [&](const Element& s) -> std::optional<Complex> {
    auto it = gamma.find(s);
    if (it == gamma.end()) return std::nullopt;
    return it->second;
  };

  switch (kind.tag()) {
    case SemigroupTag::NatAdd: {
      CharacterPoint zeta;
      for (std::size_t i = 0; i < kind.point_dim(); ++i) {
        MultiIndex unit(kind.point_dim(), 0u);
        unit[i] = 1u;
        auto v = find(Element::multi_index(unit));
        if (!v) return std::nullopt;
        zeta.push_back(*v);
      }
      return zeta;
    }
    case SemigroupTag::NatMult: {
      CharacterPoint zeta;
      for (std::size_t j = 0; j < kind.point_dim(); ++j) {
        auto v = find(Element::integer(nth_prime(static_cast<int>(j))));
        if (!v) return std::nullopt;
        zeta.push_back(*v);
      }
      return zeta;
    }
    case SemigroupTag::HalfLine: {
      std::optional<double> s0;
      for (const auto& [s, value] : gamma) {
        if (s.as_real() > 0.0 && (!s0 || s.as_real() < *s0)) s0 = s.as_real();
      }
      if (!s0) return std::nullopt;
      const Complex g0 = *find(Element::real(*s0));
      if (g0 == Complex{0.0, 0.0}) return std::nullopt;
      const Complex principal = -std::log(g0) / *s0;
      for (int k : {0, 1, -1, 2, -2, 3, -3}) {
        Complex z = principal + Complex{0.0, 2.0 * std::numbers::pi * k / *s0};
        if (z.real() < 0.0) {
          if (z.real() < -tolerance) continue;
          z.real(0.0);
        }
        const bool consistent = std::all_of(gamma.begin(), gamma.end(), [&](const auto& entry) {
          const Complex predicted = std::exp(-entry.first.as_real() * z);
          return std::abs(entry.second - predicted) <= tolerance * std::max(1.0, std::abs(entry.second));
        });
        if (consistent) return CharacterPoint{z};
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

CovarianceVerdict decide_covariance(const AtomicMeasure& mu, const Symbol& f, const EvaluationGrid& grid,
                                    const Tolerances& tol) {
  CovarianceVerdict verdict{DegenerateVerdict{DegenerateCase::FMuZero}, grid.order(), grid.size()};

  const double abs_mass = total_abs_mass(mu);
  const Complex mass = total_mass(mu);
  if (abs_mass == 0.0 || std::abs(mass) < tol.mass * abs_mass) {
    verdict.outcome = DegenerateVerdict{degenerate_check(mu, f, grid, tol)};
    return verdict;
  }

  double max_symbol = 0.0;
  double f_mu_mass = 0.0;
  for (const auto& atom : mu.atoms()) {
    const double fz = std::abs(f(atom.point));
    max_symbol = std::max(max_symbol, fz);
    f_mu_mass += fz * std::abs(atom.weight);
  }
  if (f_mu_mass <= tol.mass * abs_mass * max_symbol || max_symbol == 0.0) {
    verdict.outcome = DegenerateVerdict{DegenerateCase::FMuZero};
    return verdict;
  }

  // R_ij = mass * G_ij - u_i v_j with G the |F|^2 mu transform, u the F mu
  // column at t = e and v the conj(F) mu row at s = e.
  const auto elements = grid.elements();
  const auto table = tabulate(mu, f, elements);
  const std::size_t n = elements.size();
  std::vector<Complex> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < table.weights.size(); ++k) {
      u[i] += table.weights[k] * table.values[k][i];
      v[i] += table.weights[k] * std::conj(table.values[k][i]);
    }
  }
  const double scale = abs_mass * abs_mass * table.max_modulus * table.max_modulus;

  double worst = -1.0;
  std::size_t worst_i = 0, worst_j = 0;
  Complex worst_residual{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex g{0.0, 0.0};
      for (std::size_t k = 0; k < table.weights.size(); ++k)
        g += table.weights[k] * table.values[k][i] * std::conj(table.values[k][j]);
      const Complex r = mass * g - u[i] * v[j];
      const double normalized = std::abs(r) / scale;
      if (normalized > worst) {
        worst = normalized;
        worst_i = i;
        worst_j = j;
        worst_residual = r;
      }
    }
  }

  if (worst > tol.residual) {
    verdict.outcome = NotPointMassVerdict{elements[worst_i], elements[worst_j], worst_residual, worst};
    return verdict;
  }

  auto recovery = recover_point_mass(mu, f, grid, tol);
  PointMassVerdict pm{recovery.c, std::move(recovery.gamma), std::nullopt, worst, 0.0, false};
  pm.multiplicativity_defect = multiplicativity_defect(pm.gamma, grid);
  pm.zeta = resolve_zeta(mu.kind(), pm.gamma, tol.residual);
  for (const auto& atom : mu.atoms()) {
    if (std::abs(f(atom.point)) < tol.residual * max_symbol) pm.symbol_vanishes_on_support = true;
  }
  verdict.outcome = std::move(pm);
  return verdict;
}

}  // namespace covkit
