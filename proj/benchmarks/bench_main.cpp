#include <benchmark/benchmark.h>

#include "precession/angles.hpp"
#include "precession/entanglement.hpp"
#include "precession/oscillator.hpp"
#include "precession/spin.hpp"

using namespace precession;

static void BM_Eigh(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto q = q_matrix(theta3(), n - 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(q));
}
BENCHMARK(BM_Eigh)->Arg(61)->Arg(121)->Arg(241);

static void BM_EighJacobi(benchmark::State& state) {
  const auto q = q_matrix(theta3(), int(state.range(0)) - 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigh_jacobi(q));
}
BENCHMARK(BM_EighJacobi)->Arg(61)->Arg(121);

static void BM_SpinScore(benchmark::State& state) {
  const SpinProtocol sp(int(state.range(0)));
  const AngleSet a = three_angles(1.9, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(sp.max_score(a));
}
BENCHMARK(BM_SpinScore)->Arg(7)->Arg(31)->Arg(201);

static void BM_SpinGradient(benchmark::State& state) {
  const SpinProtocol sp(int(state.range(0)));
  const AngleSet a = three_angles(1.9, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(sp.gradient(a));
}
BENCHMARK(BM_SpinGradient)->Arg(7)->Arg(31);

static void BM_Heatmap(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(heatmap(10, int(state.range(0))));
}
BENCHMARK(BM_Heatmap)->Arg(41)->Unit(benchmark::kMillisecond);

static void BM_A3Truncation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(A3Truncation(int(state.range(0))).max_eigenvalue(int(state.range(0))));
}
BENCHMARK(BM_A3Truncation)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_TraceQuadrature(benchmark::State& state) {
  std::vector<double> th;
  const int K = int(state.range(0));
  for (int k = 0; k < K; ++k) th.push_back(kTwoPi * k / K);
  const auto a = canonicalize(std::span<const double>(th));
  for (auto _ : state) benchmark::DoNotOptimize(trace_a_squared(a));
}
BENCHMARK(BM_TraceQuadrature)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_SepBound(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sep_bound_spin(2, 2, theta3()));
}
BENCHMARK(BM_SepBound)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
