// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "cadyn/kernels.hpp"
#include "cadyn/reduction.hpp"
#include "cadyn/reversible.hpp"
#include "cadyn/rule_table.hpp"

using namespace cadyn;

namespace {

constexpr Budget kLarge{1ull << 40};

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_BlocksBruteForce(benchmark::State& state) {
  const RuleTable zeta = zeta_rule();
  const int t = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::enumerate_blocks_bruteforce(zeta, 1, t, kLarge, exec_of(state)));
  label(state);
}
BENCHMARK(BM_BlocksBruteForce)->ArgsProduct({{0, 1}, {10, 12, 14}})->Unit(benchmark::kMillisecond);

void BM_BlocksSweep(benchmark::State& state) {
  const RuleTable zeta = zeta_rule();
  const int t = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::enumerate_blocks_sweep(zeta, 1, t, kLarge, exec_of(state)));
  label(state);
}
BENCHMARK(BM_BlocksSweep)->ArgsProduct({{0, 1}, {10, 12, 14}})->Unit(benchmark::kMillisecond);

void BM_Compose(benchmark::State& state) {
  const RuleTable f = zeta_product(4);  // alphabet 81
  for (auto _ : state) benchmark::DoNotOptimize(compose(f, f, kLarge, exec_of(state)));
  label(state);
}
BENCHMARK(BM_Compose)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Inverse(benchmark::State& state) {
  const RuleTable f = zeta_product(4);
  for (auto _ : state) benchmark::DoNotOptimize(invert_up_to_radius(f, 1, kLarge, exec_of(state)));
  label(state);
}
BENCHMARK(BM_Inverse)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
