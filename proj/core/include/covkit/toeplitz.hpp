#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "covkit/grid.hpp"
#include "covkit/measure.hpp"

namespace covkit {

struct DiscAtom {
  Complex a;
  Complex m;
};

/// Atomic measure sum_i m_i delta_{a_i} on the closed disc of radius 1/2.
class DiscMeasure {
 public:
  static constexpr double kRadius = 0.5;

  /// Merges coincident atoms; throws InvalidArgument when some
  /// |a_i| > 1/2 + 1e-12.
  explicit DiscMeasure(std::vector<DiscAtom> atoms);

  std::span<const DiscAtom> atoms() const noexcept { return atoms_; }

  /// Number of atoms carrying non-zero weight.
  int support_size() const;

 private:
  std::vector<DiscAtom> atoms_;
};

/// nu_s: push-forward of |F|^2 mu under rho -> rho(s) / (2 (1 + |s|_Gamma)).
DiscMeasure disc_measure(const AtomicMeasure& mu, const Symbol& f, const Element& s);

/// M[j][k] = sum_i m_i a_i^j conj(a_i)^k, 0 <= j, k < order.
Eigen::MatrixXcd moment_matrix(const DiscMeasure& nu, int order);

/// Matrix of T_nu on the first `order` orthonormal Bergman monomials
/// e_j = sqrt((j + 1) / pi) z^j:
/// T[j][k] = sqrt((j + 1)(k + 1)) / pi * sum_i m_i a_i^k conj(a_i)^j.
Eigen::MatrixXcd toeplitz_matrix(const DiscMeasure& nu, int order);

/// Singular values in decreasing order.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

/// Count of singular values above rel_tol * sigma_1; 0 for the zero matrix.
int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol);

struct LueckingResult {
  int rank;
  int atom_count;
  bool agree;
};

/// Finite-section check that rank T_nu equals the number of support points.
LueckingResult luecking_check(const DiscMeasure& nu, int order, double rel_tol);

/// sigma_2 / sigma_1 of the Toeplitz matrix of nu_s (0 when sigma_1 = 0).
double rank_one_check(const AtomicMeasure& mu, const Symbol& f, const Element& s, int order);

struct PronyResult {
  std::vector<DiscAtom> atoms;
  int rank = 0;
  /// ||M - V diag(m) V^*||_F / ||M||_F.
  double reconstruction_residual = 0.0;
};

/// Matrix-pencil recovery of the atoms of nu from its moment matrix. The
/// rank r is the numerical rank of `moments` (capped at max_atoms); the atoms
/// are the eigenvalues of the pencil (rows 1.., rows 0..) compressed to the
/// dominant r-dimensional singular subspaces, and the weights the least
/// squares fit of M = V diag(m) V^* with V[j][i] = a_i^j.
/// Throws RankDeficientPencil when the compressed pencil is singular.
PronyResult prony_recover(const Eigen::MatrixXcd& moments, int max_atoms, double rel_tol);

PronyResult prony_recover(const DiscMeasure& nu, int order, int max_atoms, double rel_tol);

struct RouteAgreementRow {
  Element s;
  Complex gamma_laplace;
  /// 2 (1 + |s|_Gamma) a_s, present when nu_s has numerical rank 1.
  std::optional<Complex> gamma_prony;
  int rank;
  double error;
};

/// For each grid element, gamma(s) from the Laplace ratio against the value
/// read off the single Prony atom of nu_s. `error` is +inf when the Prony
/// route does not yield exactly one atom.
std::vector<RouteAgreementRow> route_agreement(const AtomicMeasure& mu, const Symbol& f,
                                               const EvaluationGrid& grid, int order, double rel_tol);

}  // namespace covkit
