#include <benchmark/benchmark.h>

#include <array>
#include <cmath>

#include "lossdeph/antideg_analytic.hpp"
#include "lossdeph/channels.hpp"
#include "lossdeph/extendibility_sdp.hpp"
#include "lossdeph/witnesses.hpp"

using namespace lossdeph;

namespace {

// state.range(0) is the qudit dimension; 0.6 is feasible, 0.75 infeasible at gamma = 1
void BM_TwoExtendible(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const double lam = state.range(1) / 100.0;
  const auto choi = qudit_choi(lam, 1.0, d);
  for (auto _ : state) benchmark::DoNotOptimize(two_extendible(choi));
}
BENCHMARK(BM_TwoExtendible)->Args({2, 60})->Args({2, 75})->Args({3, 60})->Args({3, 75})->Unit(benchmark::kMillisecond);

void BM_HadamardPsdThreshold(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hadamard_psd_threshold(-std::log(0.3), d));
}
BENCHMARK(BM_HadamardPsdThreshold)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_BuildTwoExtension(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_two_extension({0.55, 2.0, cutoff}, 0.5));
}
BENCHMARK(BM_BuildTwoExtension)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_VerifyAntidegrading(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_antidegrading({0.55, 2.0, 8}));
}
BENCHMARK(BM_VerifyAntidegrading)->Unit(benchmark::kMillisecond);

void BM_PartialTrace(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ComplexMatrix m = ComplexMatrix::Identity(d * d * d, d * d * d) / static_cast<double>(d * d * d);
  HermitianOperator rho(std::move(m), {d, d, d});
  const std::array<int, 2> keep{0, 2};
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, keep));
}
BENCHMARK(BM_PartialTrace)->Arg(4)->Arg(8)->Arg(12);

}  // namespace
BENCHMARK_MAIN();
