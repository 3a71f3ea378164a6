// Serial reference vs chunked OpenMP oracle on the same tables.

#include <benchmark/benchmark.h>

#include "mdm/enumeration.hpp"
#include "mdm/forensic.hpp"
#include "mdm/moments.hpp"

using namespace mdm;

namespace {

MdmParams bench_params(int rows) {
  return MdmParams(std::vector<int>(static_cast<std::size_t>(rows), 3),
                   theta_to_alpha(AlleleFrequencies({0.1, 0.2, 0.3, 0.4}), 0.03));
}

void BM_PmfSumSerial(benchmark::State& state) {
  const auto p = bench_params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::serial::pmf_sum(p));
  state.counters["tables"] = static_cast<double>(table_count(p.row_sums, p.categories()));
}

void BM_PmfSumParallel(benchmark::State& state) {
  const auto p = bench_params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::pmf_sum(p));
  state.counters["tables"] = static_cast<double>(table_count(p.row_sums, p.categories()));
}

void BM_MomentSerial(benchmark::State& state) {
  const auto p = bench_params(static_cast<int>(state.range(0)));
  IntMatrix r(p.profiles(), p.categories());
  r(0, 0) = 2;
  r(1, 0) = 1;
  const FactorialOrder order(r);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::serial::moment(order, p));
}

void BM_MomentParallel(benchmark::State& state) {
  const auto p = bench_params(static_cast<int>(state.range(0)));
  IntMatrix r(p.profiles(), p.categories());
  r(0, 0) = 2;
  r(1, 0) = 1;
  const FactorialOrder order(r);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::moment(order, p));
}

void BM_WoeCurve(benchmark::State& state) {
  const auto states = woe_margin_grid(2);
  const auto grid = theta_range(0.0, 0.5, 0.001);
  for (auto _ : state) benchmark::DoNotOptimize(woe_curve(states, 0.025, grid));
}

}  // namespace

BENCHMARK(BM_PmfSumSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PmfSumParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WoeCurve)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
