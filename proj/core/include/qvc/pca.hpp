#pragma once

#include <Eigen/Dense>

namespace qvc {

/// Orthonormal change of basis onto the top-k principal axes of a sample.
struct PcaTransform {
  Eigen::VectorXd mean;                // length n
  Eigen::MatrixXd components;          // k x n, orthonormal rows
  Eigen::VectorXd explained_variance;  // length k, non-increasing
};

/// Fits the top-k eigenvectors of the sample covariance (rows are samples).
/// Requires k <= cols and rows > k. Component signs are fixed so that each
/// row's largest-magnitude entry is positive, keeping fits reproducible.
PcaTransform pca_fit(const Eigen::MatrixXd& samples, int k);

/// Projects samples onto the fitted axes: (X - mean) * components^T.
Eigen::MatrixXd pca_project(const Eigen::MatrixXd& samples, const PcaTransform& t);

}  // namespace qvc
