#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "covkit/measure.hpp"

namespace gen {

using covkit::CharacterPoint;
using covkit::Complex;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  /// Uniform in the disc |z| <= radius.
  Complex disc(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * std::numbers::pi));
  }

  /// Modulus uniform in [lo, hi], argument uniform.
  Complex annulus(double lo, double hi) { return std::polar(uniform(lo, hi), uniform(0.0, 2.0 * std::numbers::pi)); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline CharacterPoint polydisc_point(Rng& rng, std::size_t dim, double radius) {
  CharacterPoint z(dim);
  for (auto& c : z) c = rng.disc(radius);
  return z;
}

/// k points of the polydisc with pairwise Euclidean distance >= separation.
inline std::vector<CharacterPoint> separated_points(Rng& rng, int k, std::size_t dim, double radius,
                                                    double separation) {
  std::vector<CharacterPoint> points;
  while (static_cast<int>(points.size()) < k) {
    auto z = polydisc_point(rng, dim, radius);
    bool ok = true;
    for (const auto& p : points) ok = ok && covkit::point_distance(p, z) >= separation;
    if (ok) points.push_back(std::move(z));
  }
  return points;
}

/// Polynomial of total degree <= 2 with complex coefficients in the unit disc.
inline covkit::Symbol random_polynomial(Rng& rng, std::size_t dim) {
  std::map<covkit::MultiIndex, Complex> coefficients;
  coefficients[covkit::MultiIndex(dim, 0u)] = rng.disc(1.0);
  for (std::size_t i = 0; i < dim; ++i) {
    covkit::MultiIndex m(dim, 0u);
    m[i] = 1;
    coefficients[m] = rng.disc(1.0);
    m[i] = 2;
    coefficients[m] = rng.disc(0.5);
  }
  return covkit::Symbol::polynomial(std::move(coefficients));
}

}  // namespace gen
