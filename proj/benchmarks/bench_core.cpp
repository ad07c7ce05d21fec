#include <benchmark/benchmark.h>

#include <random>

#include "convexstate/jb.hpp"
#include "convexstate/zoo.hpp"

using namespace convexstate;

namespace {

HermitianMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return HermitianMatrix(0.5 * (m + m.adjoint()));
}

void BM_SpekkensRatioMatrix(benchmark::State& state) {
  const VPolytope k = make_spekkens_hull();
  const LPMode mode = state.range(0) ? LPMode::Rational : LPMode::Float;
  for (auto _ : state) {
    for (std::size_t i = 0; i < k.size(); ++i)
      for (std::size_t j = 0; j < k.size(); ++j) benchmark::DoNotOptimize(affine_ratio_polytope(k, i, j, mode));
  }
}
BENCHMARK(BM_SpekkensRatioMatrix)->Arg(1)->Arg(0);

void BM_PolytopeVerdict(benchmark::State& state) {
  const VPolytope k = state.range(0) ? make_spekkens_hull() : make_classical_simplex(4);
  for (auto _ : state) benchmark::DoNotOptimize(root_theorem_check_polytope(k));
}
BENCHMARK(BM_PolytopeVerdict)->Arg(1)->Arg(0);

void BM_Eigh(benchmark::State& state) {
  const HermitianMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(h));
}
BENCHMARK(BM_Eigh)->Arg(2)->Arg(4)->Arg(8);

void BM_SeeSaw(benchmark::State& state) {
  const HermitianMatrix w = random_hermitian(4, 11);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_linear_over_separable(w, 8, 1));
}
BENCHMARK(BM_SeeSaw);

void BM_SeparableRatio(benchmark::State& state) {
  const DensityMatrix x = sample_pure_product(1).density();
  const DensityMatrix y = sample_pure_product(2).density();
  for (auto _ : state) benchmark::DoNotOptimize(affine_ratio_separable(x, y));
}
BENCHMARK(BM_SeparableRatio);

}  // namespace
BENCHMARK_MAIN();
