// Serial reference vs OpenMP restarts on the same inputs. Both produce the same
// EofResult; only wall time should differ.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "eofkit/eof.hpp"
#include "eofkit/separability.hpp"

namespace {

eofkit::DensityMatrix bench_state(int d2, int rank) { return eofkit::random_density({2, d2}, rank, 2024); }

eofkit::EofConfig bench_config(int restarts) {
  eofkit::EofConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = 1;
  return cfg;
}

void BM_Serial(benchmark::State& state) {
  const auto rho = bench_state(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto cfg = bench_config(static_cast<int>(state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(eofkit::eof_estimate_serial(rho, cfg).value);
}

void BM_OpenMP(benchmark::State& state) {
  const auto rho = bench_state(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto cfg = bench_config(static_cast<int>(state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(eofkit::eof_estimate(rho, cfg).value);
  state.counters["threads"] = omp_get_max_threads();
}

// args: d2, rank, restarts
void shapes(benchmark::internal::Benchmark* b) {
  b->Args({2, 2, 16})->Args({2, 4, 16})->Args({3, 4, 16})->Args({3, 6, 32})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_Serial)->Apply(shapes);
BENCHMARK(BM_OpenMP)->Apply(shapes);

BENCHMARK_MAIN();
