#include <benchmark/benchmark.h>

#include "dfosc/kaplan_yorke.hpp"
#include "dfosc/return_map.hpp"

using namespace dfosc;

namespace {

const FeedbackFn& worked_feedback() {
  static const FeedbackFn f = build_plateau_feedback({1.0, 0.05, 2.0 / 3.0, 4.0}, -2.0);
  return f;
}

void BM_FeedbackEval(benchmark::State& state) {
  const FeedbackFn& f = worked_feedback();
  double x = -2.5;
  for (auto _ : state) {
    x = x > 2.4 ? -2.5 : x + 1e-3;
    benchmark::DoNotOptimize(f(x));
  }
}
BENCHMARK(BM_FeedbackEval);

void BM_Hamiltonian(benchmark::State& state) {
  const FeedbackFn& f = worked_feedback();
  double u = 0.0;
  for (auto _ : state) {
    u = u > 2.4 ? 0.0 : u + 1e-3;
    benchmark::DoNotOptimize(hamiltonian(f, u, 1.3));
  }
}
BENCHMARK(BM_Hamiltonian);

void BM_Integrate(benchmark::State& state) {
  const FeedbackFn& f = worked_feedback();
  const int n = static_cast<int>(state.range(0));
  const Segment phi = Segment::ramp(n, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(f, phi, 10.0));
  }
  state.SetItemsProcessed(state.iterations() * 10 * n);  // steps per run
}
BENCHMARK(BM_Integrate)->Arg(1000)->Arg(4000);

void BM_ApplyP(benchmark::State& state) {
  const FeedbackFn& f = worked_feedback();
  const Segment phi = Segment::ramp(1000, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_P(f, phi, 20.0));
  }
}
BENCHMARK(BM_ApplyP);

void BM_QuarterTurn(benchmark::State& state) {
  const FeedbackFn& f = worked_feedback();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tau(f, 2.5));
  }
}
BENCHMARK(BM_QuarterTurn);

}  // namespace

BENCHMARK_MAIN();
