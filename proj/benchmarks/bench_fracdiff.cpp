#include <benchmark/benchmark.h>

#include "fdts/fracdiff.hpp"
#include "fdts/synthetic.hpp"

namespace {

void BM_Weights(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fdts::fd_weights(0.3, len));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Weights)->Range(64, 1 << 16);

void BM_WeightsThreshold(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fdts::fd_weights_threshold(0.3, 1e-5));
}
BENCHMARK(BM_WeightsThreshold);

void BM_FracdiffFixed(benchmark::State& state) {
  const auto x = fdts::random_walk(1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fdts::fracdiff_fixed(x, 0.3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FracdiffFixed)->Arg(2627)->Arg(20000);

void BM_FracdiffExpanding(benchmark::State& state) {
  const auto x = fdts::random_walk(1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fdts::fracdiff_expanding(x, 0.3));
}
BENCHMARK(BM_FracdiffExpanding)->Arg(2627)->Arg(20000);

}  // namespace
