#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qvc/dataset.hpp"
#include "qvc/ensemble.hpp"
#include "qvc/objective.hpp"
#include "qvc/optimize.hpp"
#include "qvc/qaum.hpp"
#include "qvc/rng.hpp"

namespace {

qvc::LabeledDataset synthetic_dataset(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  qvc::LabeledDataset ds;
  ds.features.resize(rows, cols);
  ds.labels.resize(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (int c = 0; c < cols; ++c) {
      const double v = qvc::uniform_double(gen) * 3.14159;
      ds.features(r, c) = v;
      sum += v;
    }
    ds.labels[static_cast<std::size_t>(r)] = sum > cols * 1.5 ? 1 : 0;
  }
  return ds;
}

qvc::ParameterVector random_params(const qvc::QaumCircuit& circuit,
                                   std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  qvc::ParameterVector params(static_cast<std::size_t>(circuit.param_count()));
  for (double& angle : params) angle = qvc::uniform_angle(gen);
  return params;
}

void BM_SingleEvaluation(benchmark::State& state) {
  const auto circuit = qvc::build_circuit(8, static_cast<int>(state.range(0)));
  const auto params = random_params(circuit, 7);
  const auto ds = synthetic_dataset(1, 8, 11);
  const auto x = ds.row_major_features();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qvc::evaluate(circuit, params, x));
  }
}
BENCHMARK(BM_SingleEvaluation)->Arg(1)->Arg(2)->Arg(4);

void BM_BatchEvaluation(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  const auto circuit = qvc::build_circuit(8, 2);
  const auto params = random_params(circuit, 7);
  const auto ds = synthetic_dataset(rows, 8, 11);
  const qvc::BatchEvaluator evaluator(circuit, ds.row_major_features(), rows, 8);
  std::vector<double> out(static_cast<std::size_t>(rows));
  for (auto _ : state) {
    evaluator.evaluate_all(params, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(BM_BatchEvaluation)->Arg(100)->Arg(1000);

void BM_OptimizerRun(benchmark::State& state) {
  const int budget = static_cast<int>(state.range(0));
  const auto circuit = qvc::build_circuit(8, 2);
  const auto ds = synthetic_dataset(200, 8, 13);
  const qvc::BatchEvaluator evaluator(circuit, ds.row_major_features(), 200, 8);
  const auto objective = qvc::make_training_objective(
      evaluator, ds.labels, qvc::SampleWeights::uniform(200).values);
  const auto init = random_params(circuit, 17);
  for (auto _ : state) {
    const auto result = qvc::minimize(objective, init, budget, qvc::TrustRegion{});
    benchmark::DoNotOptimize(result.best_value);
  }
}
BENCHMARK(BM_OptimizerRun)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BoostingRound(benchmark::State& state) {
  const auto circuit = qvc::build_circuit(8, 1);
  const auto ds = synthetic_dataset(500, 8, 19);
  for (auto _ : state) {
    const auto model = qvc::train_boosting(ds, 5, circuit, 1, 29);
    benchmark::DoNotOptimize(model.learners.size());
  }
}
BENCHMARK(BM_BoostingRound)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
