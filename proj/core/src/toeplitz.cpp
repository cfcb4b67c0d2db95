#include "covkit/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "covkit/errors.hpp"
#include "covkit/laplace.hpp"

namespace covkit {

namespace {

constexpr double kDiscSlack = 1e-12;

void require_order(int order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "matrix order must be >= 1");
}

}  // namespace

DiscMeasure::DiscMeasure(std::vector<DiscAtom> atoms) {
  for (const auto& atom : atoms) {
    if (!(std::abs(atom.a) <= kRadius + kDiscSlack))
      throw Error(ErrorCode::InvalidArgument, "disc atom lies outside the closed disc of radius 1/2");
    auto it = std::find_if(atoms_.begin(), atoms_.end(),
                           [&](const DiscAtom& d) { return std::abs(d.a - atom.a) <= kAtomMergeDistance; });
    if (it == atoms_.end()) {
      atoms_.push_back(atom);
    } else {
      it->m += atom.m;
    }
  }
}

int DiscMeasure::support_size() const {
  int count = 0;
  for (const auto& atom : atoms_) count += atom.m != Complex{0.0, 0.0} ? 1 : 0;
  return count;
}

DiscMeasure disc_measure(const AtomicMeasure& mu, const Symbol& f, const Element& s) {
  const double denom = 2.0 * (1.0 + sup_norm(mu, s));
  std::vector<DiscAtom> atoms;
  atoms.reserve(mu.size());
  for (const auto& atom : mu.atoms()) {
    atoms.push_back({char_eval(mu.kind(), atom.point, s) / denom, std::norm(f(atom.point)) * atom.weight});
  }
  return DiscMeasure(std::move(atoms));
}

Eigen::MatrixXcd moment_matrix(const DiscMeasure& nu, int order) {
  require_order(order);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(order, order);
  for (const auto& atom : nu.atoms()) {
    Eigen::VectorXcd powers(order);
    Complex p{1.0, 0.0};
    for (int j = 0; j < order; ++j) {
      powers(j) = p;
      p *= atom.a;
    }
    m += atom.m * powers * powers.adjoint();
  }
  return m;
}

Eigen::MatrixXcd toeplitz_matrix(const DiscMeasure& nu, int order) {
  const Eigen::MatrixXcd moments = moment_matrix(nu, order);
  Eigen::MatrixXcd t(order, order);
  for (int j = 0; j < order; ++j) {
    for (int k = 0; k < order; ++k) {
      t(j, k) = std::sqrt(double(j + 1) * double(k + 1)) / std::numbers::pi * moments(k, j);
    }
  }
  return t;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return {};
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
}

int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol) {
  const Eigen::VectorXd sigma = singular_values(m);
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) rank += sigma(i) > rel_tol * sigma(0) ? 1 : 0;
  return rank;
}

LueckingResult luecking_check(const DiscMeasure& nu, int order, double rel_tol) {
  LueckingResult out{numerical_rank(moment_matrix(nu, order), rel_tol), nu.support_size(), false};
  out.agree = out.rank == out.atom_count;
  return out;
}

double rank_one_check(const AtomicMeasure& mu, const Symbol& f, const Element& s, int order) {
  const Eigen::VectorXd sigma = singular_values(toeplitz_matrix(disc_measure(mu, f, s), order));
  if (sigma.size() < 2 || sigma(0) == 0.0) return 0.0;
  return sigma(1) / sigma(0);
}

PronyResult prony_recover(const Eigen::MatrixXcd& moments, int max_atoms, double rel_tol) {
  const Eigen::Index n = moments.rows();
  if (n < 2 || moments.cols() != n)
    throw Error(ErrorCode::InvalidArgument, "prony recovery needs a square moment matrix of order >= 2");
  if (max_atoms < 1) throw Error(ErrorCode::InvalidArgument, "max_atoms must be >= 1");

  PronyResult out;
  int r = std::min(numerical_rank(moments, rel_tol), max_atoms);
  r = std::min<int>(r, static_cast<int>(n - 1));
  out.rank = r;
  if (r == 0) return out;

  const Eigen::MatrixXcd head = moments.topRows(n - 1);
  const Eigen::MatrixXcd shifted = moments.bottomRows(n - 1);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(head, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  if (sigma(0) == 0.0 || sigma(r - 1) <= rel_tol * sigma(0))
    throw Error(ErrorCode::RankDeficientPencil, "truncated moment pencil is singular at the detected rank");

  const Eigen::MatrixXcd u = svd.matrixU().leftCols(r);
  const Eigen::MatrixXcd v = svd.matrixV().leftCols(r);
  const Eigen::VectorXd inv_sigma = sigma.head(r).cwiseInverse();
  const Eigen::MatrixXcd pencil = inv_sigma.asDiagonal() * (u.adjoint() * shifted * v);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(pencil, false);
  if (eig.info() != Eigen::Success)
    throw Error(ErrorCode::RankDeficientPencil, "eigenvalue solver failed on the compressed pencil");
  const Eigen::VectorXcd nodes = eig.eigenvalues();

  // Weights: least squares on vec(M) = sum_i m_i vec(v_i v_i^*).
  Eigen::MatrixXcd vander(n, r);
  for (int i = 0; i < r; ++i) {
    Complex p{1.0, 0.0};
    for (Eigen::Index j = 0; j < n; ++j) {
      vander(j, i) = p;
      p *= nodes(i);
    }
  }
  Eigen::MatrixXcd design(n * n, r);
  for (int i = 0; i < r; ++i) {
    const Eigen::MatrixXcd outer = vander.col(i) * vander.col(i).adjoint();
    design.col(i) = Eigen::Map<const Eigen::VectorXcd>(outer.data(), n * n);
  }
  const Eigen::VectorXcd target = Eigen::Map<const Eigen::VectorXcd>(moments.data(), n * n);
  const Eigen::VectorXcd weights = design.colPivHouseholderQr().solve(target);

  for (int i = 0; i < r; ++i) out.atoms.push_back({nodes(i), weights(i)});
  const double norm = moments.norm();
  out.reconstruction_residual = norm == 0.0 ? 0.0 : (design * weights - target).norm() / norm;
  return out;
}

PronyResult prony_recover(const DiscMeasure& nu, int order, int max_atoms, double rel_tol) {
  return prony_recover(moment_matrix(nu, order), max_atoms, rel_tol);
}

std::vector<RouteAgreementRow> route_agreement(const AtomicMeasure& mu, const Symbol& f,
                                               const EvaluationGrid& grid, int order, double rel_tol) {
  const auto recovery = recover_point_mass(mu, f, grid);
  std::vector<RouteAgreementRow> rows;
  for (const auto& s : grid.elements()) {
    RouteAgreementRow row{s, recovery.gamma.at(s), std::nullopt, 0, std::numeric_limits<double>::infinity()};
    const auto nu = disc_measure(mu, f, s);
    try {
      const auto prony = prony_recover(nu, order, order - 1, rel_tol);
      row.rank = prony.rank;
      if (prony.atoms.size() == 1) {
        row.gamma_prony = 2.0 * (1.0 + sup_norm(mu, s)) * prony.atoms.front().a;
        row.error = std::abs(*row.gamma_prony - row.gamma_laplace);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RankDeficientPencil) throw;
      row.rank = numerical_rank(moment_matrix(nu, order), rel_tol);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace covkit
