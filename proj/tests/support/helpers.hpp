#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

#include "qvc/dataset.hpp"

namespace testing {

/// Two shifted Gaussian-ish clusters, labels 0/1, features already inside the
/// encoding range [0, pi].
inline qvc::LabeledDataset make_blobs(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 0.35);
  qvc::LabeledDataset out;
  out.features.resize(rows, cols);
  out.labels.resize(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) {
    const int label = i % 2;
    const double center = label == 0 ? 1.0 : 2.1;
    for (int j = 0; j < cols; ++j) {
      double v = center + noise(gen);
      out.features(i, j) = std::clamp(v, 0.0, std::numbers::pi);
    }
    out.labels[static_cast<std::size_t>(i)] = label;
  }
  return out;
}

/// Exact element-wise equality with shape check (Eigen's operator== is
/// element-wise, so it cannot be used in boolean asserts directly).
template <typename A, typename B>
bool same_matrix(const A& a, const B& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.array() == b.array()).all();
}

/// Unique scratch path under the system temp directory.
inline std::filesystem::path temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "qvc_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

inline std::filesystem::path write_temp_csv(const std::string& name,
                                            const std::string& contents) {
  const auto path = temp_path(name);
  std::ofstream out(path);
  out << contents;
  return path;
}

}  // namespace testing
