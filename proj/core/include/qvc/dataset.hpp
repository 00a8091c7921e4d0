#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qvc/pca.hpp"

namespace qvc {

/// Per-feature min/max observed on training data; the affine map sends
/// [min, max] onto [0, pi].
struct ScaleStats {
  Eigen::VectorXd min;
  Eigen::VectorXd max;
};

/// Everything needed to replay preprocessing on new data: the PCA basis
/// fitted on the training fold and the per-feature scaling statistics
/// computed on the projected training fold.
struct Preprocessing {
  PcaTransform pca;
  ScaleStats scale;
};

struct LabeledDataset {
  Eigen::MatrixXd features;  // one row per sample
  std::vector<int> labels;   // values in {0, 1}
  std::optional<Preprocessing> preprocessing;

  Eigen::Index rows() const { return features.rows(); }
  Eigen::Index cols() const { return features.cols(); }

  /// Features flattened row-major, the layout BatchEvaluator consumes.
  std::vector<double> row_major_features() const;
};

/// Nonnegative per-sample weights summing to one.
struct SampleWeights {
  std::vector<double> values;

  static SampleWeights uniform(std::size_t count);
  /// Throws invalid_argument unless all weights are >= 0 and sum to 1
  /// within 1e-12.
  void validate() const;
  void normalize();
};

/// Reads a comma-separated file with one sample per row. The label column is
/// named (requires a header) or given as a zero-based index, and must hold
/// 0/1 values. Malformed input raises parse_error naming the row and column.
LabeledDataset load_csv(const std::string& path, const std::string& label_column,
                        bool has_header);

LabeledDataset select_rows(const LabeledDataset& dataset, std::span<const int> indices);

/// Seeded sample of `size` distinct rows (row order preserved). Returns the
/// dataset unchanged when size >= rows.
LabeledDataset subsample(const LabeledDataset& dataset, int size, std::uint64_t seed);

/// Draws rows(dataset) samples uniformly with replacement.
LabeledDataset bootstrap_sample(const LabeledDataset& dataset, std::uint64_t seed);

/// Draws rows(dataset) samples from the categorical distribution given by
/// the weights.
LabeledDataset weighted_resample(const LabeledDataset& dataset,
                                 const SampleWeights& weights, std::uint64_t seed);

/// Indices of one shuffled 50/50 split; half_a holds the extra sample when
/// the dataset has odd size.
struct FoldSplit {
  std::vector<int> half_a;
  std::vector<int> half_b;
};

/// Five independent shuffled 50/50 splits of the dataset, the resampling
/// scheme behind 5x2 cross-validation.
std::array<FoldSplit, 5> five_by_two_folds(const LabeledDataset& dataset,
                                           std::uint64_t seed);

ScaleStats scale_fit(const LabeledDataset& dataset);

/// Affine per-feature map sending [min, max] to [0, pi]. In fit mode
/// (fit_stats empty) the statistics come from the data itself; in transform
/// mode out-of-range values are clamped to [0, pi]. Constant features map
/// to pi/2.
LabeledDataset scale_to_encoding_range(const LabeledDataset& dataset,
                                       const std::optional<ScaleStats>& fit_stats = {});

/// Fits PCA to `k` components plus encoding-range scaling on a training
/// fold; the returned dataset is transformed and carries the preprocessing
/// record needed to replay the transform.
LabeledDataset preprocess_fit(const LabeledDataset& train, int k);

/// Applies a stored preprocessing record to new data (validation folds,
/// inference inputs).
LabeledDataset preprocess_apply(const LabeledDataset& dataset, const Preprocessing& pre);

}  // namespace qvc
