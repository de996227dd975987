// Serial reference kernels vs the OpenMP ones on denser-than-desk instances.
// Run: ./build/bench/strucctrl_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "strucctrl/io.hpp"
#include "strucctrl/mcs.hpp"
#include "strucctrl/rank.hpp"

namespace {

using namespace strucctrl;

ParamPair dense_instance() {
  // n=7, two inputs, 13 colors at density 0.35: tens of thousands of subgraphs
  return generate_random(7, 2, 13, 0.35, 0xBE7C4, GenMode::Binary);
}

ParamPair wide_instance() {
  // 14 terms: 2^14 subsets in the rank formula
  return generate_random(6, 3, 14, 0.4, 0x77AB1, GenMode::Binary);
}

EnumLimits bench_limits() {
  EnumLimits limits;
  limits.max_subgraphs = 50000000;
  return limits;
}

void BM_EnumerateSerial(benchmark::State& state) {
  const SCGraph scg = graph_of_pair(dense_instance());
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_mcs_serial(scg, bench_limits()));
  }
}

void BM_EnumerateParallel(benchmark::State& state) {
  const SCGraph scg = graph_of_pair(dense_instance());
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_mcs(scg, bench_limits()));
  }
}

void BM_MinRankSumSerial(benchmark::State& state) {
  const ParamPair pair = wide_instance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(generic_rank_minform_serial(pair));
  }
}

void BM_MinRankSumParallel(benchmark::State& state) {
  const ParamPair pair = wide_instance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(generic_rank_minform(pair));
  }
}

void BM_CrosscheckFanout(benchmark::State& state) {
  // per-instance fan-out happens inside crosscheck; measure a small corpus
  CrosscheckConfig config;
  config.count = static_cast<int>(state.range(0));
  config.seed = 0xC02B05;
  config.run_property_suites = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(crosscheck(config));
  }
}

BENCHMARK(BM_EnumerateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinRankSumSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinRankSumParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrosscheckFanout)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
