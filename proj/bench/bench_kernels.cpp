// Microbenchmarks comparing the parallel kernels against their serial
// references; the parallel variants must win on multi-core hosts while
// producing bit-identical output (asserted in the test suite, not here).
#include <benchmark/benchmark.h>

#include <numbers>
#include <sstream>

#include "scissors/devices.hpp"
#include "scissors/sweep.hpp"

namespace {

using namespace scissors;
constexpr double kPi = std::numbers::pi;

const FockVector& bench_input() {
  static const FockVector input = coherent_coefficients(cplx(1.5, 0.0), coherent_dim(1.5)).normalize();
  return input;
}

void closed_form(benchmark::State& state, bool parallel) {
  const DeviceParams p{0.8, kPi / 2, kPi / 4};
  const Cutoffs cut = default_cutoffs(bench_input(), p);
  for (auto _ : state) {
    const MultimodeState out = parallel ? output_state_closed_form(bench_input(), p, cut)
                                        : output_state_closed_form_serial(bench_input(), p, cut);
    benchmark::DoNotOptimize(out.terms.size());
  }
}

void BM_closed_form_serial(benchmark::State& state) { closed_form(state, false); }
void BM_closed_form_parallel(benchmark::State& state) { closed_form(state, true); }

void BM_reference_oracle(benchmark::State& state) {
  const DeviceParams p{0.5, kPi / 2, kPi / 4};
  const Cutoffs cut{30, 30, 30};
  const BeamsplitterBlocks blocks(2 * (cut.a - 1));
  const FockVector input = coherent_coefficients(cplx(1.0, 0.0), 30).normalize();
  for (auto _ : state) {
    const MultimodeState out = output_state_oracle(input, p, cut, 15, &blocks);
    benchmark::DoNotOptimize(out.terms.size());
  }
}

void metrics_sweep(benchmark::State& state, int workers) {
  SweepSpec spec;
  spec.axes = {{SweepParam::s, 0.0, 1.0, 41}};
  spec.detected_counts = {1, 2, 3};
  for (auto _ : state) {
    std::ostringstream out;
    run_sweep(spec, out, workers);
    benchmark::DoNotOptimize(out.str().size());
  }
}

void BM_sweep_one_worker(benchmark::State& state) { metrics_sweep(state, 1); }
void BM_sweep_all_workers(benchmark::State& state) { metrics_sweep(state, 0); }

BENCHMARK(BM_closed_form_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_closed_form_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reference_oracle)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_one_worker)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_all_workers)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
