#include "qvc/pca.hpp"

#include <stdexcept>

namespace qvc {

PcaTransform pca_fit(const Eigen::MatrixXd& samples, int k) {
  const Eigen::Index m = samples.rows();
  const Eigen::Index n = samples.cols();
  if (k < 1 || k > n) {
    throw std::invalid_argument("pca_fit: component count must be in [1, cols]");
  }
  if (m <= k) {
    throw std::invalid_argument("pca_fit: need more samples than components");
  }

  PcaTransform t;
  t.mean = samples.colwise().mean();
  const Eigen::MatrixXd centered = samples.rowwise() - t.mean.transpose();
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(m - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("pca_fit: eigendecomposition failed");
  }

  // Eigen returns eigenvalues in increasing order; take the top k reversed.
  t.components.resize(k, n);
  t.explained_variance.resize(k);
  for (int i = 0; i < k; ++i) {
    const Eigen::Index src = n - 1 - i;
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    Eigen::Index max_idx;
    v.cwiseAbs().maxCoeff(&max_idx);
    if (v(max_idx) < 0.0) v = -v;
    t.components.row(i) = v.transpose();
    t.explained_variance(i) = std::max(solver.eigenvalues()(src), 0.0);
  }
  return t;
}

Eigen::MatrixXd pca_project(const Eigen::MatrixXd& samples, const PcaTransform& t) {
  if (samples.cols() != t.mean.size()) {
    throw std::invalid_argument("pca_project: feature dimension mismatch");
  }
  return (samples.rowwise() - t.mean.transpose()) * t.components.transpose();
}

}  // namespace qvc
