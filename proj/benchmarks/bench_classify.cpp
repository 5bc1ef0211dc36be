#include <benchmark/benchmark.h>

#include "fdts/classify.hpp"
#include "fdts/dataset.hpp"
#include "fdts/synthetic.hpp"

namespace {

const fdts::LabeledDataset& fixture() {
  static const fdts::LabeledDataset data = fdts::build_dataset(fdts::synthetic_ohlcv(0), {});
  return data;
}

void train_and_score(benchmark::State& state, const char* spec) {
  const auto& data = fixture();
  const auto model_spec = fdts::parse_model_spec(spec);
  const auto train_X = data.train_X();
  const auto train_y = data.train_y();
  const auto test_X = data.test_X();
  for (auto _ : state) {
    const auto model = fdts::train(model_spec, train_X, train_y);
    benchmark::DoNotOptimize(fdts::predict_scores(model, test_X));
  }
}

void BM_LogReg(benchmark::State& state) { train_and_score(state, "logreg"); }
void BM_Knn(benchmark::State& state) { train_and_score(state, "knn:200"); }
void BM_Forest(benchmark::State& state) { train_and_score(state, "rf:entropy:50"); }

BENCHMARK(BM_LogReg)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Knn)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Forest)->Unit(benchmark::kMillisecond);

}  // namespace
