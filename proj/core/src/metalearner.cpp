#include "qvc/metalearner.hpp"

#include <cmath>
#include <stdexcept>

namespace qvc {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// ln(1 + e^z) - y*z, evaluated without overflow for large |z|.
double bce_term(double z, double y) {
  return (z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z))) - y * z;
}

}  // namespace

LogisticModel fit_logistic(const Eigen::MatrixXd& inputs,
                           const std::vector<int>& labels, double l2, double tol,
                           int max_steps) {
  const Eigen::Index m = inputs.rows();
  const Eigen::Index n = inputs.cols();
  if (m < 1 || n < 1) {
    throw std::invalid_argument("fit_logistic: empty design matrix");
  }
  if (static_cast<Eigen::Index>(labels.size()) != m) {
    throw std::invalid_argument("fit_logistic: label count mismatch");
  }

  bool any_pos = false;
  bool any_neg = false;
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const int label = labels[static_cast<std::size_t>(i)];
    if (label != 0 && label != 1) {
      throw std::invalid_argument("fit_logistic: labels must be 0 or 1");
    }
    (label == 1 ? any_pos : any_neg) = true;
    y(i) = label;
  }

  LogisticModel model;
  if (!any_pos || !any_neg) {
    // Degenerate single-class fit: bias saturated at the clipping boundary.
    model.weights = Eigen::VectorXd::Zero(n);
    const double saturated = std::log((1.0 - 1e-9) / 1e-9);
    model.bias = any_pos ? saturated : -saturated;
    return model;
  }

  Eigen::MatrixXd design(m, n + 1);
  design.leftCols(n) = inputs;
  design.col(n).setOnes();

  const auto objective = [&](const Eigen::VectorXd& theta) {
    const Eigen::VectorXd z = design * theta;
    double value = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) value += bce_term(z(i), y(i));
    return value / static_cast<double>(m) + 0.5 * l2 * theta.head(n).squaredNorm();
  };

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(n + 1);
  for (int step = 0; step < max_steps; ++step) {
    const Eigen::VectorXd z = design * theta;
    const Eigen::VectorXd p = z.unaryExpr([](double v) { return sigmoid(v); });
    Eigen::VectorXd grad = design.transpose() * (p - y) / static_cast<double>(m);
    grad.head(n) += l2 * theta.head(n);
    if (grad.norm() < tol) break;

    const Eigen::ArrayXd s = p.array() * (1.0 - p.array());
    Eigen::MatrixXd hessian = design.transpose() * s.matrix().asDiagonal() * design /
                              static_cast<double>(m);
    hessian.topLeftCorner(n, n).diagonal().array() += l2;

    Eigen::VectorXd delta = hessian.ldlt().solve(-grad);
    double descent = grad.dot(delta);
    if (!delta.allFinite() || descent >= 0.0) {
      delta = -grad;  // Hessian unusable this step; fall back to steepest descent
      descent = -grad.squaredNorm();
    }

    const double f0 = objective(theta);
    double t = 1.0;
    while (t > 1e-12 && objective(theta + t * delta) > f0 + 1e-4 * t * descent) {
      t *= 0.5;
    }
    theta += t * delta;
  }

  model.weights = theta.head(n);
  model.bias = theta(n);
  return model;
}

double logistic_proba(const LogisticModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.weights.size()) {
    throw std::invalid_argument("logistic_proba: input dimension mismatch");
  }
  return sigmoid(model.weights.dot(x) + model.bias);
}

Eigen::VectorXd logistic_proba_all(const LogisticModel& model,
                                   const Eigen::MatrixXd& inputs) {
  if (inputs.cols() != model.weights.size()) {
    throw std::invalid_argument("logistic_proba_all: input dimension mismatch");
  }
  Eigen::VectorXd z = inputs * model.weights;
  z.array() += model.bias;
  return z.unaryExpr([](double v) { return sigmoid(v); });
}

}  // namespace qvc
