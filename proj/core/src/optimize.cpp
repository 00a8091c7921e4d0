#include "qvc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qvc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Evaluator {
  const Objective& f;
  int budget;
  OptimizationResult& result;

  bool exhausted() const { return result.evaluations_used >= budget; }

  // Evaluates f once, recording history and the running best. Returns false
  // without evaluating when the budget is spent.
  bool eval(const std::vector<double>& x, double& out) {
    if (exhausted()) return false;
    double v = f(x);
    if (!std::isfinite(v)) v = kInf;
    ++result.evaluations_used;
    result.history.emplace_back(result.evaluations_used, v);
    if (v < result.best_value) {
      result.best_value = v;
      result.best_params = x;
    }
    out = v;
    return true;
  }
};

double simplex_size(const std::vector<std::vector<double>>& verts, int best) {
  double size = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (static_cast<int>(i) == best) continue;
    for (std::size_t d = 0; d < verts[i].size(); ++d) {
      size = std::max(size, std::abs(verts[i][d] - verts[best][d]));
    }
  }
  return size;
}

}  // namespace

OptimizationResult minimize(const Objective& objective,
                            std::vector<double> initial, int budget,
                            TrustRegion trust_region) {
  const std::size_t n = initial.size();
  if (n == 0) {
    throw std::invalid_argument("minimize: empty parameter vector");
  }
  if (budget < 1) {
    throw std::invalid_argument("minimize: budget must be >= 1");
  }
  if (!(trust_region.initial > trust_region.final) || !(trust_region.final > 0.0)) {
    throw std::invalid_argument("minimize: require trust_region initial > final > 0");
  }
  for (double v : initial) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("minimize: initial point must be finite");
    }
  }

  OptimizationResult result;
  result.best_params = initial;
  result.best_value = kInf;
  result.history.reserve(std::min(budget, 1 << 20));

  Evaluator ev{objective, budget, result};

  // Adaptive coefficients (Gao & Han 2012); reduce to the classic values at n=2.
  const double nd = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / nd;
  const double gamma = 0.75 - 0.5 / nd;
  const double delta = 1.0 - 1.0 / nd;

  std::vector<std::vector<double>> verts(n + 1, initial);
  std::vector<double> vals(n + 1, kInf);
  if (!ev.eval(verts[0], vals[0])) return result;
  for (std::size_t i = 0; i < n; ++i) {
    verts[i + 1][i] += trust_region.initial;
    if (!ev.eval(verts[i + 1], vals[i + 1])) return result;
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xt(n);

  while (!ev.exhausted()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order[0];
    const std::size_t second_worst = order[n - 1];
    const std::size_t worst = order[n];

    if (simplex_size(verts, static_cast<int>(best)) < trust_region.final) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += verts[i][d];
    }
    for (std::size_t d = 0; d < n; ++d) centroid[d] /= nd;

    for (std::size_t d = 0; d < n; ++d) {
      xr[d] = centroid[d] + alpha * (centroid[d] - verts[worst][d]);
    }
    double fr;
    if (!ev.eval(xr, fr)) break;

    if (fr < vals[best]) {
      // Expansion.
      for (std::size_t d = 0; d < n; ++d) {
        xt[d] = centroid[d] + beta * (xr[d] - centroid[d]);
      }
      double fe;
      if (!ev.eval(xt, fe)) {
        verts[worst] = xr;
        vals[worst] = fr;
        break;
      }
      if (fe < fr) {
        verts[worst] = xt;
        vals[worst] = fe;
      } else {
        verts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second_worst]) {
      verts[worst] = xr;
      vals[worst] = fr;
      continue;
    }

    bool accepted = false;
    if (fr < vals[worst]) {
      // Outside contraction.
      for (std::size_t d = 0; d < n; ++d) {
        xt[d] = centroid[d] + gamma * (xr[d] - centroid[d]);
      }
      double fc;
      if (!ev.eval(xt, fc)) break;
      if (fc <= fr) {
        verts[worst] = xt;
        vals[worst] = fc;
        accepted = true;
      }
    } else {
      // Inside contraction.
      for (std::size_t d = 0; d < n; ++d) {
        xt[d] = centroid[d] - gamma * (centroid[d] - verts[worst][d]);
      }
      double fc;
      if (!ev.eval(xt, fc)) break;
      if (fc < vals[worst]) {
        verts[worst] = xt;
        vals[worst] = fc;
        accepted = true;
      }
    }
    if (accepted) continue;

    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d) {
        verts[i][d] = verts[best][d] + delta * (verts[i][d] - verts[best][d]);
      }
      if (!ev.eval(verts[i], vals[i])) return result;
    }
  }

  return result;
}

}  // namespace qvc
