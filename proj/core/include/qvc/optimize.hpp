#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace qvc {

/// Step-size schedule for the derivative-free search: `initial` sets the
/// scale of the first probing steps, `final` the resolution at which the
/// search is considered converged.
struct TrustRegion {
  double initial = 1.0;
  double final = 1e-4;
};

struct OptimizationResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  int evaluations_used = 0;
  /// (evaluation index starting at 1, objective value). Non-finite objective
  /// values are recorded as +infinity.
  std::vector<std::pair<int, double>> history;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Minimizes a scalar objective without derivatives under a hard evaluation
/// budget. The method is the Nelder-Mead simplex search with the adaptive
/// coefficients of Gao & Han (2012), which serves as the gradient-free
/// optimizer here; its initial simplex spans trust_region.initial around the
/// starting point and the search stops once the simplex shrinks below
/// trust_region.final (or the budget runs out, whichever is first).
///
/// The budget is exact: never more than `budget` objective calls, and a
/// budget of 1 evaluates only the starting point.
OptimizationResult minimize(const Objective& objective,
                            std::vector<double> initial, int budget,
                            TrustRegion trust_region = {});

}  // namespace qvc
