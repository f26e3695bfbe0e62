#include <benchmark/benchmark.h>

#include "fisnose/data.hpp"
#include "fisnose/eval.hpp"
#include "fisnose/pipeline.hpp"

namespace {

using namespace fisnose;

const LabeledDataset& session() {
  static const LabeledDataset data = generate_session(SessionConfig::defaults());
  return data;
}

Combinator combinator_arg(const benchmark::State& state) {
  return state.range(1) ? Combinator::ProductOfGaussians : Combinator::ExpOfNegatedSum;
}

void BM_Infer(benchmark::State& state) {
  const auto rules = static_cast<std::size_t>(state.range(0));
  const FisModel model = init_model({5, rules, 3}, combinator_arg(state), 1);
  const SensorSample z = session().object(1)[100];
  for (auto _ : state) benchmark::DoNotOptimize(infer(model, z));
}
BENCHMARK(BM_Infer)->ArgsProduct({{10, 20, 80}, {0, 1}});

void BM_TrainStep(benchmark::State& state) {
  const auto rules = static_cast<std::size_t>(state.range(0));
  FisModel model = init_model({5, rules, 3}, combinator_arg(state), 1);
  const SensorSample z = session().object(0)[100];
  const Eigen::VectorXd y = one_hot_target(1, 3).values;
  for (auto _ : state) {
    model = train_step(model, z, y, 0.1);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_TrainStep)->ArgsProduct({{10, 20, 80}, {0, 1}});

void BM_TrainEpoch(benchmark::State& state) {
  const auto split = split_train_test(session());
  TrainConfig config;
  config.epochs = 1;
  config.rules = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(train(split.train, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(split.train.sample_count()));
}
BENCHMARK(BM_TrainEpoch)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ConfusionMatrix(benchmark::State& state) {
  const auto split = split_train_test(session());
  const TrainResult trained = train(split.train, TrainConfig{});
  const auto segments = segment_objects(split.test.objects(), 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(confusion_matrix(trained.model, segments, EvalConfig{}, split.test.labels()));
  }
}
BENCHMARK(BM_ConfusionMatrix)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
