#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "covkit/laplace.hpp"

namespace covkit {

// ---------------------------------------------------------------------------
// Random vectors

struct Outcome {
  double probability;
  ComplexVector x;
  Complex y;
};

/// Finite discrete law of a pair (X, Y) with X in C^d and Y in C.
class DiscreteRandomVector {
 public:
  /// Probabilities must be >= 0 and sum to 1 within 1e-12; every X must have
  /// the same dimension.
  explicit DiscreteRandomVector(std::vector<Outcome> outcomes);

  std::span<const Outcome> outcomes() const noexcept { return outcomes_; }
  std::size_t dimension() const noexcept { return outcomes_.front().x.size(); }

  /// E[g(X, Y)].
  template <typename G>
  Complex expect(G&& g) const {
    Complex sum{0.0, 0.0};
    for (const auto& o : outcomes_) sum += o.probability * g(o.x, o.y);
    return sum;
  }

  /// The measure f -> E[f(X) Y] on C^d, atoms merged on equal X and
  /// zero aggregates dropped. Throws EmptyMeasure if every aggregate is 0.
  AtomicMeasure law_measure() const;

 private:
  std::vector<Outcome> outcomes_;
};

/// E[Y] E[X^m conj(X)^n Y] - E[X^m Y] E[conj(X)^n Y].
Complex moment_condition_residual(const DiscreteRandomVector& rv, const MultiIndex& m, const MultiIndex& n);

struct ConstantVectorVerdict {
  bool constant;
  /// The constant value of X when `constant`.
  std::optional<ComplexVector> value;
  /// Witness multi-indices and raw residual when not constant.
  std::optional<std::pair<MultiIndex, MultiIndex>> witness;
  Complex residual{0.0, 0.0};
  CovarianceVerdict covariance;
};

/// Reduces the moment condition to the covariance equation of the law
/// measure with F = 1 on the grid of order `max_order`. Throws
/// ExpectationYZero when |E[Y]| < tol.mass.
ConstantVectorVerdict decide_constant_vector(const DiscreteRandomVector& rv, int max_order,
                                             const Tolerances& tol = {});

struct SampledResidual {
  Complex estimate;
  double standard_error;
  std::size_t samples;
};

/// Monte Carlo estimate of the moment residual from `batches` independent
/// batches of `batch_size` draws; the standard error is the spread of the
/// batch estimates. A demonstration path only.
SampledResidual sample_moment_residual(const DiscreteRandomVector& rv, const MultiIndex& m, const MultiIndex& n,
                                       std::size_t batches, std::size_t batch_size, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Half-plane

/// sum_k w_k F(z_k) exp(-s z_k - t conj(z_k)); the HalfLine laplace transform.
Complex halfplane_transform(const AtomicMeasure& mu, const Symbol& f, double s, double t);

// ---------------------------------------------------------------------------
// Analytic kernels

/// Truncated power series K(z, w) = sum a_(m,n) z^m w^n with z in C^d,
/// w in C^p.
class KernelCoefficients {
 public:
  KernelCoefficients(std::size_t z_dim, std::size_t w_dim, std::map<std::pair<MultiIndex, MultiIndex>, Complex> a);

  /// a_(m,m) = m + 1 for m <= truncation: the Bergman kernel of the disc up
  /// to the factor 1/pi.
  static KernelCoefficients bergman(int truncation);

  std::size_t z_dim() const noexcept { return z_dim_; }
  std::size_t w_dim() const noexcept { return w_dim_; }
  const std::map<std::pair<MultiIndex, MultiIndex>, Complex>& coefficients() const noexcept { return a_; }

  /// Set for kernels built by bergman(); enables tail_bound().
  std::optional<int> bergman_truncation() const noexcept { return bergman_truncation_; }

  /// b_m = sum_n a_(m,n) w^n: power series coefficients of K(., w).
  std::map<MultiIndex, Complex> column(const ComplexVector& w) const;

 private:
  std::size_t z_dim_;
  std::size_t w_dim_;
  std::map<std::pair<MultiIndex, MultiIndex>, Complex> a_;
  std::optional<int> bergman_truncation_;
};

Complex kernel_eval(const KernelCoefficients& k, const ComplexVector& z, const ComplexVector& w);

/// Geometric majorant of the neglected Bergman tail sum_{m > N} (m + 1) r^m,
/// r = |z||w|, reported when r <= 1/4. nullopt otherwise or for
/// non-Bergman kernels.
std::optional<double> kernel_tail_bound(const KernelCoefficients& k, double z_abs, double w_abs);

/// Power series f(z) = sum b_m z^m.
using SeriesCoefficients = std::map<MultiIndex, Complex>;

Complex series_eval(const SeriesCoefficients& b, const ComplexVector& z);

/// | |f(z)|^2 - sum_k w_k |K(z, conj(zeta_k))|^2 |.
double kernel_equation_residual(const KernelCoefficients& k, const SeriesCoefficients& f, const AtomicMeasure& mu,
                                const ComplexVector& z);

/// Points of the polydisc |z_i| <= radius: radii {0, r/3, 2r/3, r} times 8
/// angles per coordinate for d = 1, {0, r/2, r} times 4 angles beyond.
std::vector<ComplexVector> polydisc_grid(std::size_t dim, double radius);

enum class KernelVerdictTag { Extremal, NotExtremal, Inconclusive, Degenerate };

std::string_view to_string(KernelVerdictTag tag);

struct KernelVerdict {
  KernelVerdictTag tag = KernelVerdictTag::NotExtremal;
  double max_residual = 0.0;
  /// Grid point attaining max_residual.
  ComplexVector witness_z;
  /// mu = c delta_zeta when Extremal.
  Complex c{0.0, 0.0};
  std::optional<ComplexVector> zeta;
  /// f = sqrt(c) e^{i phase} K(., conj(zeta)); the phase is not fixed by the
  /// equation, which sees |f|^2 only.
  double phase = 0.0;
  /// max_m | |b_m| - sqrt|c| |K column_m| |.
  double coefficient_mismatch = 0.0;
  std::string note;
};

/// Extremal iff the kernel equation holds on the grid to `tolerance` and
/// mu is a point mass by the covariance test (F = 1 on N_0^p) whose kernel
/// column matches f in modulus with one common phase.
KernelVerdict kernel_recover(const KernelCoefficients& k, const SeriesCoefficients& f, const AtomicMeasure& mu,
                             std::span<const ComplexVector> grid, double tolerance, const Tolerances& tol = {});

}  // namespace covkit
