#include "covkit/applications.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "covkit/errors.hpp"

namespace covkit {

namespace {

Complex conj_monomial(const ComplexVector& x, const MultiIndex& n) {
  return std::conj(monomial(x, n));
}

}  // namespace

DiscreteRandomVector::DiscreteRandomVector(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw Error(ErrorCode::InvalidArgument, "a random vector needs at least one outcome");
  const std::size_t d = outcomes_.front().x.size();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "random vector dimension must be >= 1");
  double total = 0.0;
  for (const auto& o : outcomes_) {
    if (!(o.probability >= 0.0)) throw Error(ErrorCode::InvalidArgument, "outcome probability must be >= 0");
    if (o.x.size() != d) throw Error(ErrorCode::InvalidArgument, "outcomes have mixed dimensions");
    total += o.probability;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "outcome probabilities must sum to 1");
}

AtomicMeasure DiscreteRandomVector::law_measure() const {
  std::vector<Atom> atoms;
  for (const auto& o : outcomes_) atoms.push_back({o.x, o.probability * o.y});
  atoms = merge_atoms(std::move(atoms));
  std::erase_if(atoms, [](const Atom& a) { return a.weight == Complex{0.0, 0.0}; });
  return AtomicMeasure(SemigroupKind::nat_add(static_cast<int>(dimension())), std::move(atoms));
}

Complex moment_condition_residual(const DiscreteRandomVector& rv, const MultiIndex& m, const MultiIndex& n) {
  const Complex ey = rv.expect([](const ComplexVector&, Complex y) { return y; });
  const Complex mixed =
      rv.expect([&](const ComplexVector& x, Complex y) { return monomial(x, m) * conj_monomial(x, n) * y; });
  const Complex forward = rv.expect([&](const ComplexVector& x, Complex y) { return monomial(x, m) * y; });
  const Complex backward = rv.expect([&](const ComplexVector& x, Complex y) { return conj_monomial(x, n) * y; });
  return ey * mixed - forward * backward;
}

ConstantVectorVerdict decide_constant_vector(const DiscreteRandomVector& rv, int max_order, const Tolerances& tol) {
  const Complex ey = rv.expect([](const ComplexVector&, Complex y) { return y; });
  const Complex e_abs_y = rv.expect([](const ComplexVector&, Complex y) { return Complex{std::abs(y), 0.0}; });
  if (e_abs_y.real() == 0.0 || std::abs(ey) < tol.mass * e_abs_y.real())
    throw Error(ErrorCode::ExpectationYZero, "E[Y] vanishes");

  const AtomicMeasure mu = rv.law_measure();
  const auto grid = EvaluationGrid::standard(mu.kind(), max_order);
  ConstantVectorVerdict out{false, std::nullopt, std::nullopt, {0.0, 0.0},
                            decide_covariance(mu, Symbol::one(), grid, tol)};
  if (const auto* pm = std::get_if<PointMassVerdict>(&out.covariance.outcome)) {
    out.constant = true;
    out.value = pm->zeta;
  } else if (const auto* npm = std::get_if<NotPointMassVerdict>(&out.covariance.outcome)) {
    out.witness = std::pair{npm->witness_s.as_multi_index(), npm->witness_t.as_multi_index()};
    out.residual = moment_condition_residual(rv, out.witness->first, out.witness->second);
  }
  return out;
}

SampledResidual sample_moment_residual(const DiscreteRandomVector& rv, const MultiIndex& m, const MultiIndex& n,
                                       std::size_t batches, std::size_t batch_size, std::uint64_t seed) {
  if (batches < 2 || batch_size < 1)
    throw Error(ErrorCode::InvalidArgument, "sampling needs at least two batches of one draw");
  std::vector<double> probabilities;
  for (const auto& o : rv.outcomes()) probabilities.push_back(o.probability);
  std::discrete_distribution<std::size_t> pick(probabilities.begin(), probabilities.end());
  std::mt19937_64 rng(seed);

  std::vector<Complex> estimates;
  estimates.reserve(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    Complex ey{0.0, 0.0}, mixed{0.0, 0.0}, forward{0.0, 0.0}, backward{0.0, 0.0};
    for (std::size_t i = 0; i < batch_size; ++i) {
      const auto& o = rv.outcomes()[pick(rng)];
      const Complex xm = monomial(o.x, m);
      const Complex xn = conj_monomial(o.x, n);
      ey += o.y;
      mixed += xm * xn * o.y;
      forward += xm * o.y;
      backward += xn * o.y;
    }
    const double scale = 1.0 / static_cast<double>(batch_size);
    estimates.push_back(ey * scale * mixed * scale - forward * scale * backward * scale);
  }
  const Complex mean =
      std::accumulate(estimates.begin(), estimates.end(), Complex{0.0, 0.0}) / static_cast<double>(batches);
  double spread = 0.0;
  for (const auto& e : estimates) spread += std::norm(e - mean);
  const double sd = std::sqrt(spread / static_cast<double>(batches - 1));
  return {mean, sd / std::sqrt(static_cast<double>(batches)), batches * batch_size};
}

Complex halfplane_transform(const AtomicMeasure& mu, const Symbol& f, double s, double t) {
  if (mu.kind().tag() != SemigroupTag::HalfLine)
    throw Error(ErrorCode::InvalidArgument, "halfplane_transform needs a half-line measure");
  const Element es = Element::real(s);
  const Element et = Element::real(t);
  validate_element(mu.kind(), es);
  validate_element(mu.kind(), et);
  return laplace_transform(mu, f, es, et, SymbolMode::F);
}

KernelCoefficients::KernelCoefficients(std::size_t z_dim, std::size_t w_dim,
                                       std::map<std::pair<MultiIndex, MultiIndex>, Complex> a)
    : z_dim_(z_dim), w_dim_(w_dim), a_(std::move(a)) {
  if (z_dim_ == 0 || w_dim_ == 0) throw Error(ErrorCode::InvalidArgument, "kernel dimensions must be >= 1");
  for (const auto& [mn, coeff] : a_) {
    if (mn.first.size() != z_dim_ || mn.second.size() != w_dim_)
      throw Error(ErrorCode::InvalidArgument, "kernel coefficient index has the wrong arity");
    if (!std::isfinite(coeff.real()) || !std::isfinite(coeff.imag()))
      throw Error(ErrorCode::InvalidArgument, "kernel coefficient is not finite");
  }
}

KernelCoefficients KernelCoefficients::bergman(int truncation) {
  if (truncation < 0) throw Error(ErrorCode::InvalidArgument, "kernel truncation must be >= 0");
  std::map<std::pair<MultiIndex, MultiIndex>, Complex> a;
  for (unsigned m = 0; m <= static_cast<unsigned>(truncation); ++m) a[{MultiIndex{m}, MultiIndex{m}}] = m + 1.0;
  KernelCoefficients k(1, 1, std::move(a));
  k.bergman_truncation_ = truncation;
  return k;
}

std::map<MultiIndex, Complex> KernelCoefficients::column(const ComplexVector& w) const {
  std::map<MultiIndex, Complex> b;
  for (const auto& [mn, coeff] : a_) b[mn.first] += coeff * monomial(w, mn.second);
  return b;
}

Complex kernel_eval(const KernelCoefficients& k, const ComplexVector& z, const ComplexVector& w) {
  if (z.size() != k.z_dim() || w.size() != k.w_dim())
    throw Error(ErrorCode::InvalidArgument, "kernel argument has the wrong dimension");
  Complex sum{0.0, 0.0};
  for (const auto& [mn, coeff] : k.coefficients()) sum += coeff * monomial(z, mn.first) * monomial(w, mn.second);
  return sum;
}

std::optional<double> kernel_tail_bound(const KernelCoefficients& k, double z_abs, double w_abs) {
  const auto n = k.bergman_truncation();
  const double r = z_abs * w_abs;
  if (!n || r > 0.25) return std::nullopt;
  const double big_n = *n;
  return std::pow(r, big_n + 1.0) * ((big_n + 2.0) - (big_n + 1.0) * r) / ((1.0 - r) * (1.0 - r));
}

Complex series_eval(const SeriesCoefficients& b, const ComplexVector& z) {
  Complex sum{0.0, 0.0};
  for (const auto& [m, coeff] : b) sum += coeff * monomial(z, m);
  return sum;
}

double kernel_equation_residual(const KernelCoefficients& k, const SeriesCoefficients& f, const AtomicMeasure& mu,
                                const ComplexVector& z) {
  Complex integral{0.0, 0.0};
  for (const auto& atom : mu.atoms()) {
    ComplexVector w_bar(atom.point.size());
    std::transform(atom.point.begin(), atom.point.end(), w_bar.begin(), [](Complex c) { return std::conj(c); });
    integral += atom.weight * std::norm(kernel_eval(k, z, w_bar));
  }
  return std::abs(Complex{std::norm(series_eval(f, z)), 0.0} - integral);
}

std::vector<ComplexVector> polydisc_grid(std::size_t dim, double radius) {
  std::vector<Complex> axis{Complex{0.0, 0.0}};
  const int rings = dim == 1 ? 3 : 2;
  const int angles = dim == 1 ? 8 : 4;
  for (int r = 1; r <= rings; ++r) {
    for (int a = 0; a < angles; ++a) {
      axis.push_back(std::polar(radius * r / rings, 2.0 * std::numbers::pi * a / angles));
    }
  }
  std::vector<ComplexVector> points{ComplexVector{}};
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<ComplexVector> next;
    for (const auto& p : points) {
      for (const auto& c : axis) {
        auto q = p;
        q.push_back(c);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

std::string_view to_string(KernelVerdictTag tag) {
  switch (tag) {
    case KernelVerdictTag::Extremal: return "extremal";
    case KernelVerdictTag::NotExtremal: return "not_extremal";
    case KernelVerdictTag::Inconclusive: return "inconclusive";
    case KernelVerdictTag::Degenerate: return "degenerate";
  }
  return "unknown";
}

KernelVerdict kernel_recover(const KernelCoefficients& k, const SeriesCoefficients& f, const AtomicMeasure& mu,
                             std::span<const ComplexVector> grid, double tolerance, const Tolerances& tol) {
  if (mu.kind().tag() != SemigroupTag::NatAdd || mu.kind().point_dim() != k.w_dim())
    throw Error(ErrorCode::InvalidArgument, "kernel measure must live on C^p with p the kernel's w dimension");
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "kernel grid is empty");

  KernelVerdict out;
  out.tag = KernelVerdictTag::NotExtremal;
  out.max_residual = -1.0;
  for (const auto& z : grid) {
    const double r = kernel_equation_residual(k, f, mu, z);
    if (r > out.max_residual) {
      out.max_residual = r;
      out.witness_z = z;
    }
  }
  if (out.max_residual > tolerance) return out;

  const auto covariance =
      decide_covariance(mu, Symbol::one(), EvaluationGrid::standard(mu.kind()), tol);
  if (covariance.is_degenerate()) {
    out.tag = KernelVerdictTag::Degenerate;
    out.note = "measure has zero total mass";
    return out;
  }
  const auto* pm = std::get_if<PointMassVerdict>(&covariance.outcome);
  if (pm == nullptr || !pm->zeta) {
    out.tag = KernelVerdictTag::Inconclusive;
    out.note = pm == nullptr ? "kernel equation holds on the grid but the measure is not a point mass"
                             : "point mass location could not be resolved";
    return out;
  }
  out.c = pm->c;
  out.zeta = pm->zeta;

  ComplexVector zeta_bar(pm->zeta->size());
  std::transform(pm->zeta->begin(), pm->zeta->end(), zeta_bar.begin(), [](Complex c) { return std::conj(c); });
  const auto column = k.column(zeta_bar);
  const auto peak = std::max_element(column.begin(), column.end(), [](const auto& a, const auto& b) {
    return std::abs(a.second) < std::abs(b.second);
  });
  if (peak == column.end() || std::abs(peak->second) == 0.0) {
    out.tag = KernelVerdictTag::Inconclusive;
    out.note = "kernel column at conj(zeta) vanishes within the truncation";
    return out;
  }
  const double amplitude = std::sqrt(std::abs(out.c));
  const auto b_peak = f.find(peak->first);
  const Complex b_at_peak = b_peak == f.end() ? Complex{0.0, 0.0} : b_peak->second;
  out.phase = std::arg(b_at_peak / peak->second);
  const Complex rotation = std::polar(amplitude, out.phase);

  std::map<MultiIndex, std::pair<Complex, Complex>> paired;
  for (const auto& [m, v] : column) paired[m].second = rotation * v;
  for (const auto& [m, v] : f) paired[m].first = v;
  double mismatch = 0.0;
  double mismatch_modulus = 0.0;
  for (const auto& [m, bv] : paired) {
    mismatch = std::max(mismatch, std::abs(bv.first - bv.second));
    mismatch_modulus = std::max(mismatch_modulus, std::abs(std::abs(bv.first) - std::abs(bv.second)));
  }
  out.coefficient_mismatch = mismatch_modulus;
  if (mismatch > std::sqrt(tolerance)) {
    out.tag = KernelVerdictTag::Inconclusive;
    out.note = "f does not match sqrt(c) e^{i phase} K(., conj(zeta)) coefficientwise";
    return out;
  }
  out.tag = KernelVerdictTag::Extremal;
  out.note = "phase of f is not determined by the kernel equation";
  return out;
}

}  // namespace covkit
