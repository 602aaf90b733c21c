// Serial reference vs OpenMP for the Monte Carlo estimators and the octant cubature.
// Both backends produce identical results; only wall time differs.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <thread>

#include "gcap/analytic.hpp"
#include "gcap/monte_carlo.hpp"

namespace {

gcap::Backend backend_of(const benchmark::State& state) {
  return state.range(0) == 0 ? gcap::Backend::Serial : gcap::Backend::OpenMP;
}

gcap::RunConfig config(const benchmark::State& state, std::size_t samples) {
  gcap::RunConfig cfg;
  cfg.samples = samples;
  cfg.workers = std::max(8u, std::thread::hardware_concurrency());
  cfg.backend = backend_of(state);
  return cfg;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "openmp"); }

void BM_capture(benchmark::State& state) {
  const auto cfg = config(state, 1'000'000);
  for (auto _ : state) benchmark::DoNotOptimize(gcap::estimate_capture(1.0, 0.0, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.samples));
  label(state);
}

void BM_content_3d(benchmark::State& state) {
  const auto cfg = config(state, 1'000'000);
  for (auto _ : state) benchmark::DoNotOptimize(gcap::estimate_expected_content(3, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.samples));
  label(state);
}

void BM_quad_stats(benchmark::State& state) {
  const auto cfg = config(state, 1'000'000);
  for (auto _ : state) benchmark::DoNotOptimize(gcap::estimate_quad_stats(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.samples));
  label(state);
}

void BM_content_variance(benchmark::State& state) {
  const auto cfg = config(state, 2'000);
  for (auto _ : state) benchmark::DoNotOptimize(gcap::estimate_content_variance_2d(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.samples));
  label(state);
}

void BM_capture_cubature(benchmark::State& state) {
  gcap::CubatureOptions opts;
  opts.backend = backend_of(state);
  std::size_t evaluations = 0;
  for (auto _ : state) {
    const auto r = gcap::capture_probability(1.0, gcap::kCaptureAccuracy, opts);
    evaluations += r.evaluations;
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(static_cast<int64_t>(evaluations));
  label(state);
}

}  // namespace

BENCHMARK(BM_capture)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_content_3d)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_quad_stats)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_content_variance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_capture_cubature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
