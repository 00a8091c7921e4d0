#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qvc/dataset.hpp"
#include "qvc/qaum.hpp"

namespace qvc {

struct TrainedLearner {
  QaumCircuit circuit;
  ParameterVector params;
  std::uint64_t init_seed = 0;
  int budget = 0;
  double final_loss = 0.0;
};

enum class EnsembleKind { single, bagging, boosting };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

/// A trained model. `single` holds one learner and no metalearner; the
/// ensemble kinds hold N learners plus N+1 logistic coefficients (bias last).
struct EnsembleModel {
  EnsembleKind kind = EnsembleKind::single;
  std::vector<TrainedLearner> learners;
  std::vector<double> metalearner;
  std::optional<Preprocessing> preprocessing;
};

struct BoostState {
  SampleWeights weights;
  int round = 0;
  double epsilon = 0.0;
  double alpha = 0.0;
};

struct BoostUpdateResult {
  BoostState state;
  bool terminated = false;  // learner entirely correct or entirely incorrect
};

struct Prediction {
  double probability = 0.0;
  int label = 0;
};

/// Draws an initial parameter vector uniformly from [0, 2*pi) per angle, then
/// minimizes the uniformly weighted cross-entropy for exactly `budget`
/// objective evaluations. The dataset must already be preprocessed.
TrainedLearner train_learner(const LabeledDataset& dataset,
                             const QaumCircuit& circuit, int budget,
                             std::uint64_t rng_seed);

/// Wraps one learner as a model of kind `single`.
EnsembleModel train_single(const LabeledDataset& dataset, const QaumCircuit& circuit,
                           int budget, std::uint64_t rng_seed);

/// Trains n_learners on independent bootstrap samples (all seeds pre-derived
/// from rng_seed, so any thread count gives bit-identical results), then fits
/// the metalearner on their probability outputs over the original dataset.
EnsembleModel train_bagging(const LabeledDataset& dataset, int n_learners,
                            const QaumCircuit& circuit, int budget_per_learner,
                            std::uint64_t rng_seed, int threads = 1);

/// One AdaBoost reweighting step. correct[i] is nonzero when point i was
/// classified correctly by the current round's learner.
BoostUpdateResult boost_update_weights(const BoostState& state,
                                       std::span<const int> correct);

/// Sequential AdaBoost-by-resampling: each round trains on a weighted
/// resample, updates weights from predictions on the original dataset, and
/// stops at the cap or when a learner is entirely correct or incorrect (that
/// terminal learner is still kept).
EnsembleModel train_boosting(const LabeledDataset& dataset, int max_learners,
                             const QaumCircuit& circuit, int budget_per_learner,
                             std::uint64_t rng_seed);

/// Logistic-regression combiner on the m x N matrix of learner outputs.
/// Returns N+1 coefficients with the bias last.
std::vector<double> fit_metalearner(const Eigen::MatrixXd& learner_outputs,
                                    const std::vector<int>& labels);

/// Probability and label for one preprocessed feature vector.
Prediction ensemble_predict(const EnsembleModel& model, std::span<const double> x);

/// Batch prediction over a preprocessed dataset.
std::vector<Prediction> ensemble_predict_batch(const EnsembleModel& model,
                                               const LabeledDataset& dataset);

/// m x N matrix of per-learner class-1 probabilities over a preprocessed
/// dataset; column j belongs to learner j.
Eigen::MatrixXd learner_proba_matrix(const std::vector<TrainedLearner>& learners,
                                     const LabeledDataset& dataset);

}  // namespace qvc
