#include <random>

#include <benchmark/benchmark.h>

#include "covkit/laplace.hpp"
#include "covkit/toeplitz.hpp"

using namespace covkit;

namespace {

AtomicMeasure random_measure(int dim, int atoms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  std::vector<Atom> out;
  for (int k = 0; k < atoms; ++k) {
    CharacterPoint z(static_cast<std::size_t>(dim));
    for (auto& c : z) c = {u(rng), u(rng)};
    out.push_back({z, {1.0 + u(rng), u(rng)}});
  }
  return AtomicMeasure(SemigroupKind::nat_add(dim), out);
}

void BM_DecideCovariance(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int atoms = static_cast<int>(state.range(1));
  const auto mu = random_measure(dim, atoms, 1);
  const auto grid = EvaluationGrid::standard(mu.kind());
  for (auto _ : state) benchmark::DoNotOptimize(decide_covariance(mu, Symbol::one(), grid));
  state.counters["grid"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_DecideCovariance)->Args({1, 1})->Args({1, 4})->Args({2, 1})->Args({2, 4})->Args({3, 4});

DiscMeasure random_disc(int atoms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<DiscAtom> out;
  for (int k = 0; k < atoms; ++k) out.push_back({std::polar(0.45 * u(rng), 6.283185307179586 * u(rng)), 0.1 + u(rng)});
  return DiscMeasure(out);
}

void BM_NumericalRank(benchmark::State& state) {
  const auto m = moment_matrix(random_disc(4, 2), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(numerical_rank(m, 1e-8));
}
BENCHMARK(BM_NumericalRank)->Arg(8)->Arg(12)->Arg(24)->Arg(48);

void BM_PronyRecover(benchmark::State& state) {
  const auto nu = random_disc(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(prony_recover(nu, 12, 11, 1e-8));
}
BENCHMARK(BM_PronyRecover)->Arg(1)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
