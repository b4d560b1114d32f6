#include <benchmark/benchmark.h>

#include "qpcalc/qpcalc.hpp"

using namespace qpcalc;

namespace {

// range(0) is the truncation order throughout.

void BM_CyclicDerivatives(benchmark::State& state) {
  const auto phi = corpus_entry("laufer", static_cast<int>(state.range(0))).document.potential;
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_derivatives(phi));
}
BENCHMARK(BM_CyclicDerivatives)->Arg(8)->Arg(12)->Arg(16);

void BM_JacobiCompletion(benchmark::State& state) {
  const auto phi = corpus_entry("brown-wemyss", static_cast<int>(state.range(0))).document.potential;
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_system(phi));
}
BENCHMARK(BM_JacobiCompletion)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_JacobiCompletionLaufer(benchmark::State& state) {
  const auto phi = corpus_entry("laufer", static_cast<int>(state.range(0))).document.potential;
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_system(phi));
}
BENCHMARK(BM_JacobiCompletionLaufer)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_LambdaDimension(benchmark::State& state) {
  const auto rs = jacobi_system(corpus_entry("brown-wemyss", static_cast<int>(state.range(0))).document.potential);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_dimension(rs));
}
BENCHMARK(BM_LambdaDimension)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_Hh0Class(benchmark::State& state) {
  const auto phi = corpus_entry("brown-wemyss", static_cast<int>(state.range(0))).document.potential;
  for (auto _ : state) benchmark::DoNotOptimize(hh0_class(phi));
}
BENCHMARK(BM_Hh0Class)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ConstructEquivalence(benchmark::State& state) {
  const auto phi = corpus_entry("brown-wemyss", static_cast<int>(state.range(0))).document.potential;
  const auto jet5 = jet(phi, 5);
  for (auto _ : state) benchmark::DoNotOptimize(construct_equivalence(jet5, phi));
}
BENCHMARK(BM_ConstructEquivalence)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Invert(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto doc = corpus_entry("laufer-loops", n).document;
  const auto h = parse_endo("map a: 2 a; 1 a b; -1 b b b\nmap b: 1 b; 1 a a; 3 a b a\n", doc.quiver, n);
  for (auto _ : state) benchmark::DoNotOptimize(invert(h));
}
BENCHMARK(BM_Invert)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_GinzburgDSquared(benchmark::State& state) {
  const auto g = build_ginzburg(corpus_entry("laufer", static_cast<int>(state.range(0))).document.potential);
  for (auto _ : state) benchmark::DoNotOptimize(check_d_squared(g));
}
BENCHMARK(BM_GinzburgDSquared)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_GammaTransfer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto doc = corpus_entry("laufer", n).document;
  const auto h = parse_endo("map c: 2 c; 1 c b\nmap d: 1/2 d; 1 b d\n", doc.quiver, n);
  for (auto _ : state) benchmark::DoNotOptimize(transfer_gamma(h, doc.potential));
}
BENCHMARK(BM_GammaTransfer)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
