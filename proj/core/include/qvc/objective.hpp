#pragma once

#include <span>
#include <vector>

#include "qvc/optimize.hpp"
#include "qvc/qaum.hpp"

namespace qvc {

// Probabilities are clipped into [kProbEpsilon, 1 - kProbEpsilon] before the
// cross-entropy is evaluated, so a saturated circuit cannot produce infinities.
inline constexpr double kProbEpsilon = 1e-9;

// Weighted binary cross-entropy: -sum_i w_i * (y_i ln p_i + (1-y_i) ln(1-p_i)).
double weighted_bce(std::span<const double> probs, std::span<const int> labels,
                    std::span<const double> weights);

// Bundles a cached batch evaluator with labels and per-sample weights into the
// callable consumed by minimize().  The evaluator must outlive the objective.
Objective make_training_objective(const BatchEvaluator& evaluator,
                                  std::vector<int> labels,
                                  std::vector<double> weights);

}  // namespace qvc
