#include "qvc/crossval.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "qvc/errors.hpp"
#include "qvc/rng.hpp"
#include "qvc/stats.hpp"
#include "qvc/threading.hpp"

namespace qvc {

namespace {

// Stream offset separating per-fold training seeds from the shuffle seeds that
// five_by_two_folds derives at streams 0..4.
constexpr std::uint64_t kFoldJobStream = 100;

void check_disjoint(const std::vector<int>& train, const std::vector<int>& val) {
  std::vector<int> sorted_train = train;
  std::sort(sorted_train.begin(), sorted_train.end());
  for (int idx : val) {
    if (std::binary_search(sorted_train.begin(), sorted_train.end(), idx)) {
      throw invalid_state_error("run_crossval: fold halves overlap");
    }
  }
}

std::vector<int> predicted_labels(const EnsembleModel& model,
                                  const LabeledDataset& preprocessed) {
  const auto predictions = ensemble_predict_batch(model, preprocessed);
  std::vector<int> labels(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) labels[i] = predictions[i].label;
  return labels;
}

}  // namespace

std::vector<double> CrossValReport::validation_accuracies() const {
  std::vector<double> acc(per_fold.size());
  for (std::size_t i = 0; i < per_fold.size(); ++i) {
    acc[i] = per_fold[i].validation_accuracy;
  }
  return acc;
}

EnsembleModel train_model(const ModelSpec& spec, const LabeledDataset& preprocessed,
                          std::uint64_t seed, int threads) {
  if (spec.depth < 1 || spec.learners < 1 || spec.budget < 1) {
    throw std::invalid_argument("train_model: depth, learners, budget must be >= 1");
  }
  const QaumCircuit circuit =
      build_circuit(static_cast<int>(preprocessed.cols()), spec.depth);
  switch (spec.kind) {
    case EnsembleKind::single:
      return train_single(preprocessed, circuit, spec.budget, seed);
    case EnsembleKind::bagging:
      return train_bagging(preprocessed, spec.learners, circuit, spec.budget, seed,
                           threads);
    case EnsembleKind::boosting:
      return train_boosting(preprocessed, spec.learners, circuit, spec.budget, seed);
  }
  throw std::invalid_argument("train_model: unknown model kind");
}

CrossValReport run_crossval(const ModelSpec& spec, const LabeledDataset& dataset,
                            std::uint64_t master_seed, int threads) {
  if (spec.pca_components < 1) {
    throw std::invalid_argument("run_crossval: pca_components must be >= 1");
  }

  const auto folds = five_by_two_folds(dataset, master_seed);
  const int pca_k =
      std::min<int>(spec.pca_components, static_cast<int>(dataset.cols()));

  CrossValReport report;
  report.per_fold.resize(10);
  report.spec = spec;
  report.master_seed = master_seed;

  parallel_for(10, threads, [&](int job) {
    const int rep = job / 2;
    const bool train_on_a = job % 2 == 0;
    const auto& split = folds[static_cast<std::size_t>(rep)];
    const auto& train_idx = train_on_a ? split.half_a : split.half_b;
    const auto& val_idx = train_on_a ? split.half_b : split.half_a;
    check_disjoint(train_idx, val_idx);

    const auto start = std::chrono::steady_clock::now();

    const LabeledDataset train_raw = select_rows(dataset, train_idx);
    const LabeledDataset val_raw = select_rows(dataset, val_idx);
    const LabeledDataset train_pre = preprocess_fit(train_raw, pca_k);
    const LabeledDataset val_pre =
        preprocess_apply(val_raw, *train_pre.preprocessing);

    const std::uint64_t seed =
        derive_seed(master_seed, kFoldJobStream + static_cast<std::uint64_t>(job));
    // Fold jobs already run concurrently; learner training stays sequential.
    const EnsembleModel model = train_model(spec, train_pre, seed, 1);

    FoldRecord& record = report.per_fold[static_cast<std::size_t>(job)];
    record.repetition = rep + 1;
    record.fold = train_on_a ? 'A' : 'B';
    record.training_accuracy =
        accuracy(predicted_labels(model, train_pre), train_pre.labels);
    record.validation_accuracy =
        accuracy(predicted_labels(model, val_pre), val_pre.labels);
    record.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  });

  const std::vector<double> acc = report.validation_accuracies();
  report.mean_accuracy = mean(acc);
  report.std_accuracy = std_dev(acc);
  return report;
}

}  // namespace qvc
