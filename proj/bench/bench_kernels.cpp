// Serial reference vs OpenMP kernels on the workloads the library actually runs.
// Pass --benchmark_filter to pick one; GC_THREADS is not read here, use OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "gaussmarg/bound.hpp"
#include "gaussmarg/hermite.hpp"
#include "gaussmarg/kernels.hpp"
#include "gaussmarg/sampling.hpp"
#include "gaussmarg/scenario.hpp"

namespace {

using namespace gmarg;

const DensitySpec& reference_spec() {
  static const DensitySpec spec = example26::spec_for_eta(example26::kMaxEta);
  return spec;
}

// Normalization audit: f over [-8, 8]^2 with 257 nodes per axis.
void BM_TrapezoidSerial(benchmark::State& state) {
  const auto& spec = reference_spec();
  const kernels::Axis axis{-8.0, 8.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::trapezoid_serial([&](std::span<const double> x) { return density_f(spec, x); }, 2, axis));
  }
}
void BM_TrapezoidParallel(benchmark::State& state) {
  const auto& spec = reference_spec();
  const kernels::Axis axis{-8.0, 8.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::trapezoid_parallel([&](std::span<const double> x) { return density_f(spec, x); }, 2, axis));
  }
}
BENCHMARK(BM_TrapezoidSerial)->Arg(257)->Arg(1025)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrapezoidParallel)->Arg(257)->Arg(1025)->Unit(benchmark::kMillisecond);

// Density grid for `eval`.
void BM_TabulateSerial(benchmark::State& state) {
  const auto& spec = reference_spec();
  const kernels::Axis axis{-3.0, 3.0, 201};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::tabulate_serial([&](std::span<const double> x) { return density_f(spec, x); }, 2, axis));
  }
}
void BM_TabulateParallel(benchmark::State& state) {
  const auto& spec = reference_spec();
  const kernels::Axis axis{-3.0, 3.0, 201};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::tabulate_parallel([&](std::span<const double> x) { return density_f(spec, x); }, 2, axis));
  }
}
BENCHMARK(BM_TabulateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TabulateParallel)->Unit(benchmark::kMillisecond);

// Candidate selection of the bound search: Halton scan of the n = 4 objective.
void top_k_case(benchmark::State& state, bool parallel) {
  const auto p = vandermonde_antisym(4);
  const auto renorm = renormalize(p);
  const std::size_t count = static_cast<std::size_t>(state.range(0));
  auto value = [&](std::size_t i) {
    auto y = halton_point(i, 4);
    for (double& c : y) c = 10.0 * c - 5.0;
    return bound_objective(example26::kSigma, p, renorm, y);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? kernels::top_k_parallel(value, count, 16)
                                      : kernels::top_k_serial(value, count, 16));
  }
}
void BM_TopKSerial(benchmark::State& state) { top_k_case(state, false); }
void BM_TopKParallel(benchmark::State& state) { top_k_case(state, true); }
BENCHMARK(BM_TopKSerial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TopKParallel)->Arg(20000)->Unit(benchmark::kMillisecond);

// Rejection sampling; both paths produce identical batches.
void BM_SampleSerial(benchmark::State& state) {
  const auto& spec = reference_spec();
  for (auto _ : state) benchmark::DoNotOptimize(sample_serial(spec, static_cast<std::size_t>(state.range(0)), 1));
}
void BM_SampleParallel(benchmark::State& state) {
  const auto& spec = reference_spec();
  for (auto _ : state) benchmark::DoNotOptimize(sample(spec, static_cast<std::size_t>(state.range(0)), 1));
}
BENCHMARK(BM_SampleSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
