#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qvc {

struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
};

// Fits logistic regression minimizing mean binary cross-entropy plus an L2
// penalty (l2/2)*||weights||^2 with the bias left unpenalized, by damped
// Newton steps until the gradient norm drops below tol or max_steps is hit.
// Single-class labels yield the bias-only saturated solution for that class.
LogisticModel fit_logistic(const Eigen::MatrixXd& inputs,
                           const std::vector<int>& labels, double l2 = 1e-4,
                           double tol = 1e-6, int max_steps = 10000);

double logistic_proba(const LogisticModel& model, const Eigen::VectorXd& x);

Eigen::VectorXd logistic_proba_all(const LogisticModel& model,
                                   const Eigen::MatrixXd& inputs);

}  // namespace qvc
