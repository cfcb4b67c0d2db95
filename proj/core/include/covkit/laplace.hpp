#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "covkit/grid.hpp"
#include "covkit/measure.hpp"
#include "covkit/pair_function.hpp"

namespace covkit {

struct Tolerances {
  /// Total masses below mass * sum|w_k| count as zero.
  double mass = 1e-10;
  /// Covariance residuals are compared against residual * residual_scale().
  double residual = 1e-8;
  /// Singular values below rank * sigma_1 are discarded.
  double rank = 1e-8;
};

/// mu^(s, t) = sum_k w_k rho_k(s) conj(rho_k(t)).
Complex laplace_transform(const AtomicMeasure& mu, const Element& s, const Element& t);

/// The transform of F mu, conj(F) mu or |F|^2 mu.
Complex laplace_transform(const AtomicMeasure& mu, const Symbol& f, const Element& s, const Element& t,
                          SymbolMode mode = SymbolMode::F);

/// mu(Gamma) (|F|^2 mu)^(s, t) - (F mu)^(s, e) (conj(F) mu)^(e, t).
Complex covariance_residual(const AtomicMeasure& mu, const Symbol& f, const Element& s, const Element& t);

/// (sum_k |w_k|)^2 * (max over atoms and grid of |F(z_k) rho_k(s)|)^2.
/// Bounds both products in the residual, so residual / scale is invariant
/// under mu -> lambda mu.
double residual_scale(const AtomicMeasure& mu, const Symbol& f, const EvaluationGrid& grid);

enum class DegenerateCase { MassZeroEq3Holds, MassZeroEq4Holds, MassZeroNeitherHolds, FMuZero };

std::string_view to_string(DegenerateCase c);

/// For mu(Gamma) = 0 the equation holds iff int rho(s) F dmu vanishes for all
/// s, or int conj(rho(s) F) dmu does. Reports which (the first when both).
/// Throws InvalidArgument when the total mass is not negligible.
DegenerateCase degenerate_check(const AtomicMeasure& mu, const Symbol& f, const EvaluationGrid& grid,
                                const Tolerances& tol = {});

struct PointMassRecovery {
  Complex c;
  /// gamma(s) = (F mu)^(s, e) / (F mu)^(e, e) on the closure of the grid.
  ElementTable gamma;
};

/// Throws FMuIntegralZero when int F dmu is negligible.
PointMassRecovery recover_point_mass(const AtomicMeasure& mu, const Symbol& f, const EvaluationGrid& grid,
                                     const Tolerances& tol = {});

/// max over s, t in the grid of |gamma(st) - gamma(s) gamma(t)|.
double multiplicativity_defect(const ElementTable& gamma, const EvaluationGrid& grid);

/// f(e, e) f(s, t) - f(s, e) f(e, t).
Complex factorization_residual(const PairFunction& f, const Element& s, const Element& t);

/// mu^ tabulated on elements x elements.
PairFunction laplace_pair_function(const AtomicMeasure& mu, std::span<const Element> elements);

/// Reads the character parameter back off a multiplicative table: gamma(e_i)
/// for NatAdd, gamma(p_j) for NatMult, -log(gamma(s0)) / s0 for HalfLine
/// with the branch chosen to agree with every tabulated value. nullopt when
/// the table lacks the needed elements or no consistent branch exists.
std::optional<CharacterPoint> resolve_zeta(const SemigroupKind& kind, const ElementTable& gamma,
                                           double tolerance);

struct PointMassVerdict {
  Complex c;
  ElementTable gamma;
  std::optional<CharacterPoint> zeta;
  double max_residual;
  double multiplicativity_defect;
  /// Some atom has |F| negligible: the equation then constrains F mu and
  /// |F|^2 mu only, not the mass sitting on {F = 0}.
  bool symbol_vanishes_on_support;
};

struct NotPointMassVerdict {
  Element witness_s;
  Element witness_t;
  Complex residual;
  double normalized_residual;
};

struct DegenerateVerdict {
  DegenerateCase which;
};

struct CovarianceVerdict {
  std::variant<PointMassVerdict, NotPointMassVerdict, DegenerateVerdict> outcome;
  std::optional<int> grid_order;
  std::size_t grid_size = 0;

  bool is_point_mass() const { return std::holds_alternative<PointMassVerdict>(outcome); }
  bool is_not_point_mass() const { return std::holds_alternative<NotPointMassVerdict>(outcome); }
  bool is_degenerate() const { return std::holds_alternative<DegenerateVerdict>(outcome); }
};

/// Decides whether the covariance equation holds on grid x grid.
/// NotPointMass carries the pair maximizing the normalized residual and is a
/// certificate; PointMass is certified only relative to the grid.
CovarianceVerdict decide_covariance(const AtomicMeasure& mu, const Symbol& f, const EvaluationGrid& grid,
                                    const Tolerances& tol = {});

}  // namespace covkit
