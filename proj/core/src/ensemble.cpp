#include "qvc/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "qvc/metalearner.hpp"
#include "qvc/objective.hpp"
#include "qvc/optimize.hpp"
#include "qvc/rng.hpp"
#include "qvc/threading.hpp"

namespace qvc {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_model(const EnsembleModel& model) {
  if (model.learners.empty()) {
    throw std::invalid_argument("ensemble: model has no learners");
  }
  if (model.kind == EnsembleKind::single) {
    if (model.learners.size() != 1) {
      throw std::invalid_argument("ensemble: single model must hold one learner");
    }
  } else if (model.metalearner.size() != model.learners.size() + 1) {
    throw std::invalid_argument(
        "ensemble: metalearner coefficient count must be learner count + 1");
  }
}

LogisticModel metalearner_view(const EnsembleModel& model) {
  const std::size_t n = model.learners.size();
  LogisticModel logit;
  logit.weights = Eigen::Map<const Eigen::VectorXd>(model.metalearner.data(),
                                                    static_cast<Eigen::Index>(n));
  logit.bias = model.metalearner[n];
  return logit;
}

}  // namespace

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::single: return "single";
    case EnsembleKind::bagging: return "bagging";
    case EnsembleKind::boosting: return "boosting";
  }
  throw std::invalid_argument("ensemble: unknown kind");
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  if (name == "single") return EnsembleKind::single;
  if (name == "bagging") return EnsembleKind::bagging;
  if (name == "boosting") return EnsembleKind::boosting;
  throw std::invalid_argument("ensemble: unknown kind '" + name + "'");
}

TrainedLearner train_learner(const LabeledDataset& dataset,
                             const QaumCircuit& circuit, int budget,
                             std::uint64_t rng_seed) {
  if (dataset.cols() != circuit.num_features) {
    throw std::invalid_argument("train_learner: dataset/circuit feature mismatch");
  }

  std::mt19937_64 gen(rng_seed);
  ParameterVector init(static_cast<std::size_t>(circuit.param_count()));
  for (double& angle : init) angle = uniform_angle(gen);

  const int rows = static_cast<int>(dataset.rows());
  const BatchEvaluator evaluator(circuit, dataset.row_major_features(), rows,
                                 static_cast<int>(dataset.cols()));
  const auto objective = make_training_objective(
      evaluator, dataset.labels, SampleWeights::uniform(dataset.labels.size()).values);

  const OptimizationResult result = minimize(objective, init, budget, TrustRegion{});

  TrainedLearner learner;
  learner.circuit = circuit;
  learner.params = result.best_params;
  learner.init_seed = rng_seed;
  learner.budget = budget;
  learner.final_loss = result.best_value;
  return learner;
}

EnsembleModel train_single(const LabeledDataset& dataset, const QaumCircuit& circuit,
                           int budget, std::uint64_t rng_seed) {
  EnsembleModel model;
  model.kind = EnsembleKind::single;
  model.learners.push_back(
      train_learner(dataset, circuit, budget, derive_seed(rng_seed, 1)));
  model.preprocessing = dataset.preprocessing;
  return model;
}

EnsembleModel train_bagging(const LabeledDataset& dataset, int n_learners,
                            const QaumCircuit& circuit, int budget_per_learner,
                            std::uint64_t rng_seed, int threads) {
  if (n_learners < 1) {
    throw std::invalid_argument("train_bagging: n_learners must be >= 1");
  }

  EnsembleModel model;
  model.kind = EnsembleKind::bagging;
  model.learners.resize(static_cast<std::size_t>(n_learners));

  // Seeds are fixed ahead of the parallel region; learner i depends only on
  // its own pair, so execution order cannot change the result.
  parallel_for(n_learners, threads, [&](int i) {
    const std::uint64_t boot_seed = derive_seed(rng_seed, 2 * static_cast<std::uint64_t>(i));
    const std::uint64_t init_seed =
        derive_seed(rng_seed, 2 * static_cast<std::uint64_t>(i) + 1);
    const LabeledDataset sample = bootstrap_sample(dataset, boot_seed);
    model.learners[static_cast<std::size_t>(i)] =
        train_learner(sample, circuit, budget_per_learner, init_seed);
  });

  const Eigen::MatrixXd outputs = learner_proba_matrix(model.learners, dataset);
  model.metalearner = fit_metalearner(outputs, dataset.labels);
  model.preprocessing = dataset.preprocessing;
  return model;
}

BoostUpdateResult boost_update_weights(const BoostState& state,
                                       std::span<const int> correct) {
  state.weights.validate();
  if (correct.size() != state.weights.values.size()) {
    throw std::invalid_argument("boost_update_weights: flag/weight length mismatch");
  }

  double epsilon = 0.0;
  for (std::size_t i = 0; i < correct.size(); ++i) {
    if (!correct[i]) epsilon += state.weights.values[i];
  }

  BoostUpdateResult result;
  result.state = state;
  result.state.round = state.round + 1;
  result.state.epsilon = epsilon;

  if (epsilon <= 1e-12 || epsilon >= 1.0 - 1e-12) {
    result.state.alpha = 0.0;
    result.terminated = true;
    return result;
  }

  const double alpha = 0.5 * std::log((1.0 - epsilon) / epsilon);
  result.state.alpha = alpha;
  const double up = std::exp(alpha);
  const double down = std::exp(-alpha);
  for (std::size_t i = 0; i < correct.size(); ++i) {
    result.state.weights.values[i] *= correct[i] ? down : up;
  }
  result.state.weights.normalize();
  return result;
}

EnsembleModel train_boosting(const LabeledDataset& dataset, int max_learners,
                             const QaumCircuit& circuit, int budget_per_learner,
                             std::uint64_t rng_seed) {
  if (max_learners < 1) {
    throw std::invalid_argument("train_boosting: max_learners must be >= 1");
  }

  EnsembleModel model;
  model.kind = EnsembleKind::boosting;

  BoostState state;
  state.weights = SampleWeights::uniform(static_cast<std::size_t>(dataset.rows()));

  const std::vector<double> flat = dataset.row_major_features();
  const BatchEvaluator original(circuit, flat, static_cast<int>(dataset.rows()),
                                static_cast<int>(dataset.cols()));
  std::vector<double> expectations(static_cast<std::size_t>(dataset.rows()));
  std::vector<int> correct(static_cast<std::size_t>(dataset.rows()));

  for (int round = 0; round < max_learners; ++round) {
    const std::uint64_t resample_seed =
        derive_seed(rng_seed, 2 * static_cast<std::uint64_t>(round));
    const std::uint64_t init_seed =
        derive_seed(rng_seed, 2 * static_cast<std::uint64_t>(round) + 1);

    const LabeledDataset sample =
        weighted_resample(dataset, state.weights, resample_seed);
    model.learners.push_back(
        train_learner(sample, circuit, budget_per_learner, init_seed));

    // Correctness is judged on the original dataset, not the resample.
    original.evaluate_all(model.learners.back().params, expectations);
    for (std::size_t i = 0; i < expectations.size(); ++i) {
      const int predicted = 0.5 * (1.0 - expectations[i]) >= 0.5 ? 1 : 0;
      correct[i] = predicted == dataset.labels[i] ? 1 : 0;
    }

    BoostUpdateResult update = boost_update_weights(state, correct);
    state = std::move(update.state);
    if (update.terminated) break;
  }

  const Eigen::MatrixXd outputs = learner_proba_matrix(model.learners, dataset);
  model.metalearner = fit_metalearner(outputs, dataset.labels);
  model.preprocessing = dataset.preprocessing;
  return model;
}

std::vector<double> fit_metalearner(const Eigen::MatrixXd& learner_outputs,
                                    const std::vector<int>& labels) {
  const LogisticModel logit = fit_logistic(learner_outputs, labels);
  std::vector<double> coefficients(static_cast<std::size_t>(logit.weights.size()) + 1);
  for (Eigen::Index j = 0; j < logit.weights.size(); ++j) {
    coefficients[static_cast<std::size_t>(j)] = logit.weights(j);
  }
  coefficients.back() = logit.bias;
  return coefficients;
}

Prediction ensemble_predict(const EnsembleModel& model, std::span<const double> x) {
  check_model(model);
  if (static_cast<int>(x.size()) != model.learners.front().circuit.num_features) {
    throw std::invalid_argument("ensemble_predict: feature dimension mismatch");
  }

  Prediction out;
  if (model.kind == EnsembleKind::single) {
    const TrainedLearner& learner = model.learners.front();
    out.probability = predict_proba(learner.circuit, learner.params, x);
  } else {
    double z = model.metalearner.back();
    for (std::size_t j = 0; j < model.learners.size(); ++j) {
      const TrainedLearner& learner = model.learners[j];
      z += model.metalearner[j] * predict_proba(learner.circuit, learner.params, x);
    }
    out.probability = sigmoid(z);
  }
  out.label = out.probability >= 0.5 ? 1 : 0;
  return out;
}

std::vector<Prediction> ensemble_predict_batch(const EnsembleModel& model,
                                               const LabeledDataset& dataset) {
  check_model(model);
  const Eigen::MatrixXd outputs = learner_proba_matrix(model.learners, dataset);

  std::vector<Prediction> predictions(static_cast<std::size_t>(dataset.rows()));
  if (model.kind == EnsembleKind::single) {
    for (Eigen::Index r = 0; r < dataset.rows(); ++r) {
      predictions[static_cast<std::size_t>(r)].probability = outputs(r, 0);
    }
  } else {
    const Eigen::VectorXd probs = logistic_proba_all(metalearner_view(model), outputs);
    for (Eigen::Index r = 0; r < dataset.rows(); ++r) {
      predictions[static_cast<std::size_t>(r)].probability = probs(r);
    }
  }
  for (auto& p : predictions) p.label = p.probability >= 0.5 ? 1 : 0;
  return predictions;
}

Eigen::MatrixXd learner_proba_matrix(const std::vector<TrainedLearner>& learners,
                                     const LabeledDataset& dataset) {
  if (learners.empty()) {
    throw std::invalid_argument("learner_proba_matrix: no learners");
  }
  const int rows = static_cast<int>(dataset.rows());
  const std::vector<double> flat = dataset.row_major_features();

  Eigen::MatrixXd outputs(rows, static_cast<Eigen::Index>(learners.size()));
  std::vector<double> expectations(static_cast<std::size_t>(rows));
  for (std::size_t j = 0; j < learners.size(); ++j) {
    const BatchEvaluator evaluator(learners[j].circuit, flat, rows,
                                   static_cast<int>(dataset.cols()));
    evaluator.evaluate_all(learners[j].params, expectations);
    for (int r = 0; r < rows; ++r) {
      outputs(r, static_cast<Eigen::Index>(j)) = 0.5 * (1.0 - expectations[static_cast<std::size_t>(r)]);
    }
  }
  return outputs;
}

}  // namespace qvc
