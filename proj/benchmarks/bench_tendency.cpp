#include <benchmark/benchmark.h>

#include "sqg/diagnostics.hpp"
#include "sqg/random_state.hpp"
#include "sqg/tendency.hpp"
#include "sqg/timeloop.hpp"

namespace {

sqg::SpectralState sample(int n) {
  return sqg::random_state({.truncation = n, .support_radius = n, .shear = 1.0}, 7);
}

void BM_RhsDirect(benchmark::State& st) {
  const sqg::SpectralState s = sample(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(sqg::rhs_direct(s));
}
BENCHMARK(BM_RhsDirect)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_RhsFast(benchmark::State& st) {
  const sqg::SpectralState s = sample(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(sqg::rhs_fast(s));
}
BENCHMARK(BM_RhsFast)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Rk4Step(benchmark::State& st) {
  const sqg::SpectralState s = sample(static_cast<int>(st.range(0)));
  const sqg::Evaluator rhs = sqg::make_evaluator(sqg::Method::Fast, s.truncation());
  for (auto _ : st) benchmark::DoNotOptimize(sqg::step_rk4(s, 1e-3, rhs));
}
BENCHMARK(BM_Rk4Step)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Record(benchmark::State& st) {
  const sqg::SpectralState s = sample(static_cast<int>(st.range(0)));
  const sqg::Evaluator rhs = sqg::make_evaluator(sqg::Method::Fast, s.truncation());
  for (auto _ : st) benchmark::DoNotOptimize(sqg::compute_record(s, 0.05, 11.0, rhs));
}
BENCHMARK(BM_Record)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
