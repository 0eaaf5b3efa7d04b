#include <benchmark/benchmark.h>

#include "mfkit/blocks.hpp"
#include "mfkit/cohomology.hpp"
#include "mfkit/cyclo.hpp"
#include "mfkit/surfaces.hpp"

using namespace mfkit;

static void BM_DimBlockCold(benchmark::State& state) {
  const ColorSet cs(static_cast<int>(state.range(0)), Variant::SU2);
  for (auto _ : state) {
    clear_block_memo();
    benchmark::DoNotOptimize(dim_block({6, {1, 1, 2, 2}}, cs));
  }
}
BENCHMARK(BM_DimBlockCold)->Arg(5)->Arg(7)->Arg(11)->Arg(13);

static void BM_CycloMul(benchmark::State& state) {
  const long n = state.range(0);
  CycloScalar a = CycloScalar::root_of_unity(1, n) + CycloScalar(Rational(3, 7));
  const CycloScalar b = CycloScalar::root_of_unity(3, n) - CycloScalar(2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycloMul)->Arg(5)->Arg(20)->Arg(60);

static void BM_CycloInverse(benchmark::State& state) {
  const long n = state.range(0);
  const CycloScalar a = CycloScalar::root_of_unity(1, n) + CycloScalar(Rational(3, 7));
  for (auto _ : state) benchmark::DoNotOptimize(arith(ArithOp::Inv, a));
}
BENCHMARK(BM_CycloInverse)->Arg(5)->Arg(20)->Arg(60);

static void BM_FibonacciAdjointH1(benchmark::State& state) {
  const auto pres = builtin_presentation("triangle(5,5,5)");
  const MatrixRep ad =
      adjoint(load_rep(std::string(MFKIT_DATA_DIR) + "/fibonacci_t555.json", &pres, RelatorMode::Projective));
  for (auto _ : state) benchmark::DoNotOptimize(h_report(pres, ad));
}
BENCHMARK(BM_FibonacciAdjointH1);

static void BM_IsEmbeddable(benchmark::State& state) {
  const ColorSet cs(5, Variant::SU2);
  const std::vector<int> colors(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(is_embeddable(0, static_cast<int>(colors.size()), colors, 4, cs));
}
BENCHMARK(BM_IsEmbeddable)->DenseRange(2, 5);
BENCHMARK_MAIN();
