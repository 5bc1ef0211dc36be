#include <benchmark/benchmark.h>

#include "fdts/dsearch.hpp"
#include "fdts/stattests.hpp"
#include "fdts/synthetic.hpp"

namespace {

void BM_Adf(benchmark::State& state) {
  const auto x = fdts::random_walk(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fdts::adf_test(x));
}
BENCHMARK(BM_Adf)->Arg(500)->Arg(2627);

void BM_Kpss(benchmark::State& state) {
  const auto x = fdts::random_walk(2, 2627);
  for (auto _ : state) benchmark::DoNotOptimize(fdts::kpss_test(x));
}
BENCHMARK(BM_Kpss);

void BM_ScanDefaultGrid(benchmark::State& state) {
  const auto x = fdts::random_walk(3, 2627, 0.01, 4.6);
  const auto grid = fdts::default_d_grid();
  for (auto _ : state) benchmark::DoNotOptimize(fdts::scan_d(x, grid));
}
BENCHMARK(BM_ScanDefaultGrid)->Unit(benchmark::kMillisecond);

}  // namespace
