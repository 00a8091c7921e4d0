#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qvc/dataset.hpp"
#include "qvc/ensemble.hpp"

namespace qvc {

/// Model configuration for one cross-validation arm.
struct ModelSpec {
  EnsembleKind kind = EnsembleKind::single;
  int depth = 1;
  int learners = 1;  // bagging: exact count; boosting: round cap
  int budget = 1;
  int pca_components = 8;
};

struct FoldRecord {
  int repetition = 0;  // 1..5
  char fold = 'A';     // 'A' trains on the first half, 'B' on the second
  double validation_accuracy = 0.0;
  double training_accuracy = 0.0;
  double wall_time_seconds = 0.0;
};

struct CrossValReport {
  std::vector<FoldRecord> per_fold;  // exactly 10, ordered (rep, fold)
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  ModelSpec spec;
  std::string dataset_name;
  std::uint64_t master_seed = 0;

  /// The 10 validation accuracies in (rep, fold) order, as consumed by the
  /// paired t-test.
  std::vector<double> validation_accuracies() const;
};

/// Trains one model per spec on an already-preprocessed dataset.
EnsembleModel train_model(const ModelSpec& spec, const LabeledDataset& preprocessed,
                          std::uint64_t seed, int threads = 1);

/// 5x2 cross-validation: five seeded shuffles into halves, each half used once
/// for training and once for validation. Preprocessing (PCA + scaling) is fit
/// on the training half only. Fold shuffles depend only on master_seed, so two
/// specs evaluated with the same seed share identical folds. Deterministic for
/// any thread count.
CrossValReport run_crossval(const ModelSpec& spec, const LabeledDataset& dataset,
                            std::uint64_t master_seed, int threads = 1);

}  // namespace qvc
