#include <benchmark/benchmark.h>

#include "bank.hpp"
#include "liftlab/lifting.hpp"
#include "liftlab/model.hpp"
#include "liftlab/schur.hpp"

using namespace liftlab;

namespace {

const RowTuple kHalf({CMatrix::Constant(1, 1, 0.5)}, "H_C");

void BM_AssembleRandom(benchmark::State& state) {
  bank::Rng rng(1);
  const Symbol th = bank::random_symbol(rng, 2, 2, 2, 2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(th, n).matrix.nonZeros());
}
BENCHMARK(BM_AssembleRandom)->DenseRange(4, 8, 2);

void BM_SymbolSpace(benchmark::State& state) {
  bank::Rng rng(2);
  const Symbol th = bank::random_symbol(rng, 2, 1, 2, 2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(SymbolSpace(th, n).rank_delta());
}
BENCHMARK(BM_SymbolSpace)->DenseRange(3, 6, 1)->Unit(benchmark::kMillisecond);

void BM_PsdFactor(benchmark::State& state) {
  bank::Rng rng(3);
  const Eigen::Index n = state.range(0);
  const CMatrix g = bank::gaussian(rng, n, n / 2);
  const CMatrix m = g * g.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(psd_factor(m).rank());
}
BENCHMARK(BM_PsdFactor)->RangeMultiplier(2)->Range(32, 256);

void BM_MapE_Mobius(benchmark::State& state) {
  const Symbol th = mobius(0.5, 40).symbol();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(map_E(kHalf, th, LiftPolicy{n, n - 4, 1, 1e-7}).lifting.dim());
}
BENCHMARK(BM_MapE_Mobius)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MapE_Shift(benchmark::State& state) {
  const Symbol th = bank::z_over_two();
  for (auto _ : state) benchmark::DoNotOptimize(map_E(kHalf, th, LiftPolicy{}).lifting.dim());
}
BENCHMARK(BM_MapE_Shift)->Unit(benchmark::kMillisecond);

void BM_MapM_Mobius(benchmark::State& state) {
  const Lifting e = map_E(kHalf, mobius(0.5, 40).symbol(), LiftPolicy{}).lifting;
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(map_M(e, degree).symbol.coeffs.size());
}
BENCHMARK(BM_MapM_Mobius)->Arg(8)->Arg(32);

void BM_BuildModel(benchmark::State& state) {
  const Symbol th = bank::z_over_two();
  for (auto _ : state) benchmark::DoNotOptimize(build_model(th, ModelPolicy{}).HA.dim());
}
BENCHMARK(BM_BuildModel)->Unit(benchmark::kMillisecond);

void BM_SzegoSpectral(benchmark::State& state) {
  const ScalarSchur s = mobius(0.5, 40);
  const int points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(szego_spectral(s, points).integral);
}
BENCHMARK(BM_SzegoSpectral)->RangeMultiplier(4)->Range(256, 4096);

void BM_LemmaInstance(benchmark::State& state) {
  const CMatrix t = [] {
    bank::Rng rng(4);
    return bank::random_isometry(rng, 16, 12);
  }();
  bank::Rng rng(5);
  const CMatrix k1 = bank::random_isometry(rng, 12, 5);
  CMatrix gen(16, 8);
  gen << t * k1, bank::gaussian(rng, 16, 3);
  const Subspace s1(12, k1), s2 = Subspace::span_of(gen);
  for (auto _ : state) benchmark::DoNotOptimize(verify_lemma_inv(t, s1, s2).max_residual());
}
BENCHMARK(BM_LemmaInstance);

}  // namespace
BENCHMARK_MAIN();
