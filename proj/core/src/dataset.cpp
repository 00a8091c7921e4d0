#include "qvc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qvc/errors.hpp"
#include "qvc/rng.hpp"

namespace qvc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_cell(std::string_view cell, const std::string& path, std::size_t line,
                  std::size_t column) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw parse_error(path + ": non-numeric cell at line " + std::to_string(line) +
                      ", column " + std::to_string(column));
  }
  return value;
}

bool is_index(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::vector<double> LabeledDataset::row_major_features() const {
  std::vector<double> flat(static_cast<std::size_t>(rows() * cols()));
  for (Eigen::Index r = 0; r < rows(); ++r) {
    for (Eigen::Index c = 0; c < cols(); ++c) {
      flat[static_cast<std::size_t>(r * cols() + c)] = features(r, c);
    }
  }
  return flat;
}

SampleWeights SampleWeights::uniform(std::size_t count) {
  if (count == 0) {
    throw std::invalid_argument("SampleWeights::uniform: empty weight vector");
  }
  SampleWeights w;
  w.values.assign(count, 1.0 / static_cast<double>(count));
  return w;
}

void SampleWeights::validate() const {
  if (values.empty()) {
    throw std::invalid_argument("SampleWeights: empty weight vector");
  }
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("SampleWeights: weights must be nonnegative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("SampleWeights: weights must sum to 1");
  }
}

void SampleWeights::normalize() {
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw std::invalid_argument("SampleWeights: cannot normalize, sum not positive");
  }
  for (double& v : values) v /= sum;
}

LabeledDataset load_csv(const std::string& path, const std::string& label_column,
                        bool has_header) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error("cannot open dataset file: " + path);
  }

  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (trim(line).empty()) continue;
    lines.push_back(std::move(line));
  }
  if (lines.empty() || (has_header && lines.size() < 2)) {
    throw parse_error(path + ": no data rows");
  }

  std::size_t first_data = 0;
  std::size_t n_cols = 0;
  std::size_t label_idx = 0;
  if (has_header) {
    const auto header = split_fields(lines[0]);
    n_cols = header.size();
    first_data = 1;
    if (is_index(label_column)) {
      label_idx = std::stoul(label_column);
    } else {
      const auto it = std::find(header.begin(), header.end(), label_column);
      if (it == header.end()) {
        throw parse_error(path + ": label column '" + label_column +
                          "' not found in header");
      }
      label_idx = static_cast<std::size_t>(it - header.begin());
    }
  } else {
    if (!is_index(label_column)) {
      throw std::invalid_argument(
          "load_csv: label column by name requires a header row");
    }
    label_idx = std::stoul(label_column);
    n_cols = split_fields(lines[0]).size();
  }
  if (label_idx >= n_cols) {
    throw parse_error(path + ": label column index " + std::to_string(label_idx) +
                      " out of range for " + std::to_string(n_cols) + " columns");
  }

  const std::size_t m = lines.size() - first_data;
  const std::size_t n = n_cols - 1;
  LabeledDataset ds;
  ds.features.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  ds.labels.resize(m);

  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t line_no = first_data + r + 1;
    const auto fields = split_fields(lines[first_data + r]);
    if (fields.size() != n_cols) {
      throw parse_error(path + ": ragged row at line " + std::to_string(line_no) +
                        " (" + std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(n_cols) + ")");
    }
    std::size_t dst = 0;
    for (std::size_t c = 0; c < n_cols; ++c) {
      const double value = parse_cell(fields[c], path, line_no, c + 1);
      if (c == label_idx) {
        if (value != 0.0 && value != 1.0) {
          throw parse_error(path + ": unknown label at line " +
                            std::to_string(line_no) + ", column " +
                            std::to_string(c + 1) + " (expected 0 or 1)");
        }
        ds.labels[r] = static_cast<int>(value);
      } else {
        ds.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(dst++)) =
            value;
      }
    }
  }
  return ds;
}

LabeledDataset select_rows(const LabeledDataset& dataset,
                           std::span<const int> indices) {
  if (indices.empty()) {
    throw std::invalid_argument("select_rows: empty index set");
  }
  LabeledDataset out;
  out.features.resize(static_cast<Eigen::Index>(indices.size()), dataset.cols());
  out.labels.resize(indices.size());
  out.preprocessing = dataset.preprocessing;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const int idx = indices[i];
    if (idx < 0 || idx >= dataset.rows()) {
      throw std::invalid_argument("select_rows: index out of range");
    }
    out.features.row(static_cast<Eigen::Index>(i)) = dataset.features.row(idx);
    out.labels[i] = dataset.labels[static_cast<std::size_t>(idx)];
  }
  return out;
}

LabeledDataset subsample(const LabeledDataset& dataset, int size, std::uint64_t seed) {
  if (size < 1) {
    throw std::invalid_argument("subsample: size must be >= 1");
  }
  if (size >= dataset.rows()) return dataset;

  std::mt19937_64 gen(seed);
  std::vector<int> indices(static_cast<std::size_t>(dataset.rows()));
  std::iota(indices.begin(), indices.end(), 0);
  for (int i = 0; i < size; ++i) {
    const std::size_t j =
        static_cast<std::size_t>(i) + uniform_index(gen, indices.size() - i);
    std::swap(indices[static_cast<std::size_t>(i)], indices[j]);
  }
  indices.resize(static_cast<std::size_t>(size));
  std::sort(indices.begin(), indices.end());
  return select_rows(dataset, indices);
}

LabeledDataset bootstrap_sample(const LabeledDataset& dataset, std::uint64_t seed) {
  const std::size_t m = static_cast<std::size_t>(dataset.rows());
  std::mt19937_64 gen(seed);
  std::vector<int> indices(m);
  for (std::size_t i = 0; i < m; ++i) {
    indices[i] = static_cast<int>(uniform_index(gen, m));
  }
  return select_rows(dataset, indices);
}

LabeledDataset weighted_resample(const LabeledDataset& dataset,
                                 const SampleWeights& weights, std::uint64_t seed) {
  weights.validate();
  const std::size_t m = static_cast<std::size_t>(dataset.rows());
  if (weights.values.size() != m) {
    throw std::invalid_argument("weighted_resample: weight/row count mismatch");
  }

  std::vector<double> cumulative(m);
  std::partial_sum(weights.values.begin(), weights.values.end(), cumulative.begin());

  std::mt19937_64 gen(seed);
  std::vector<int> indices(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u = uniform_double(gen);
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    indices[i] = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), m - 1));
  }
  return select_rows(dataset, indices);
}

std::array<FoldSplit, 5> five_by_two_folds(const LabeledDataset& dataset,
                                           std::uint64_t seed) {
  const std::size_t m = static_cast<std::size_t>(dataset.rows());
  if (m < 2) {
    throw std::invalid_argument("five_by_two_folds: need at least 2 samples");
  }

  std::array<FoldSplit, 5> folds;
  for (std::size_t rep = 0; rep < 5; ++rep) {
    std::mt19937_64 gen(derive_seed(seed, rep));
    std::vector<int> indices(m);
    std::iota(indices.begin(), indices.end(), 0);
    for (std::size_t i = m - 1; i > 0; --i) {
      const std::size_t j = uniform_index(gen, i + 1);
      std::swap(indices[i], indices[j]);
    }
    const std::size_t half = (m + 1) / 2;
    folds[rep].half_a.assign(indices.begin(), indices.begin() + half);
    folds[rep].half_b.assign(indices.begin() + half, indices.end());
  }
  return folds;
}

ScaleStats scale_fit(const LabeledDataset& dataset) {
  ScaleStats stats;
  stats.min = dataset.features.colwise().minCoeff();
  stats.max = dataset.features.colwise().maxCoeff();
  return stats;
}

LabeledDataset scale_to_encoding_range(const LabeledDataset& dataset,
                                       const std::optional<ScaleStats>& fit_stats) {
  const ScaleStats stats = fit_stats ? *fit_stats : scale_fit(dataset);
  if (stats.min.size() != dataset.cols()) {
    throw std::invalid_argument("scale_to_encoding_range: stats dimension mismatch");
  }

  const double pi = std::numbers::pi;
  LabeledDataset out = dataset;
  for (Eigen::Index c = 0; c < dataset.cols(); ++c) {
    const double lo = stats.min(c);
    const double span = stats.max(c) - lo;
    for (Eigen::Index r = 0; r < dataset.rows(); ++r) {
      if (span > 0.0) {
        out.features(r, c) =
            std::clamp((dataset.features(r, c) - lo) / span * pi, 0.0, pi);
      } else {
        out.features(r, c) = pi / 2.0;
      }
    }
  }
  return out;
}

LabeledDataset preprocess_fit(const LabeledDataset& train, int k) {
  Preprocessing pre;
  pre.pca = pca_fit(train.features, k);

  LabeledDataset projected;
  projected.features = pca_project(train.features, pre.pca);
  projected.labels = train.labels;

  pre.scale = scale_fit(projected);
  LabeledDataset out = scale_to_encoding_range(projected, pre.scale);
  out.preprocessing = std::move(pre);
  return out;
}

LabeledDataset preprocess_apply(const LabeledDataset& dataset, const Preprocessing& pre) {
  LabeledDataset projected;
  projected.features = pca_project(dataset.features, pre.pca);
  projected.labels = dataset.labels;

  LabeledDataset out = scale_to_encoding_range(projected, pre.scale);
  out.preprocessing = pre;
  return out;
}

}  // namespace qvc
