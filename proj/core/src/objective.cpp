#include "qvc/objective.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace qvc {

double weighted_bce(std::span<const double> probs, std::span<const int> labels,
                    std::span<const double> weights) {
  if (probs.empty() || probs.size() != labels.size() ||
      probs.size() != weights.size()) {
    throw std::invalid_argument("weighted_bce: size mismatch");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = std::clamp(probs[i], kProbEpsilon, 1.0 - kProbEpsilon);
    loss -= weights[i] * (labels[i] == 1 ? std::log(p) : std::log(1.0 - p));
  }
  return loss;
}

Objective make_training_objective(const BatchEvaluator& evaluator,
                                  std::vector<int> labels,
                                  std::vector<double> weights) {
  if (labels.empty()) {
    throw std::invalid_argument("make_training_objective: empty dataset");
  }
  if (labels.size() != static_cast<std::size_t>(evaluator.rows()) ||
      weights.size() != labels.size()) {
    throw std::invalid_argument("make_training_objective: size mismatch");
  }
  // Shared scratch so repeated objective calls reuse one probability buffer.
  auto probs = std::make_shared<std::vector<double>>(labels.size());
  return [&evaluator, labels = std::move(labels), weights = std::move(weights),
          probs](const std::vector<double>& params) {
    evaluator.evaluate_all(params, *probs);
    for (double& v : *probs) v = 0.5 * (1.0 - v);  // <Z> -> class-1 probability
    return weighted_bce(*probs, labels, weights);
  };
}

}  // namespace qvc
