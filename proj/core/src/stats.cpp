#include "qvc/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qvc {

namespace {

// Continued-fraction kernel for the incomplete beta (Lentz's method).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int max_iter = 500;
  constexpr double rel_tol = 1e-10;
  constexpr double tiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double numer = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + numer * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + numer / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;

    numer = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + numer * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + numer / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < rel_tol) return h;
  }
  throw std::runtime_error("regularized_incomplete_beta: no convergence");
}

}  // namespace

double accuracy(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.empty() || predictions.size() != labels.size()) {
    throw std::invalid_argument("accuracy: empty or mismatched inputs");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

double mean(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("mean: empty input");
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double std_dev(std::span<const double> values) {
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("regularized_incomplete_beta: a, b must be positive");
  }
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw std::invalid_argument("regularized_incomplete_beta: x outside [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // Use the side of the symmetry relation where the fraction converges fast.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, int nu) {
  if (nu < 1) {
    throw std::invalid_argument("student_t_two_sided_p: degrees of freedom < 1");
  }
  if (std::isnan(t)) {
    throw std::invalid_argument("student_t_two_sided_p: t is NaN");
  }
  if (std::isinf(t)) return 0.0;
  const double n = static_cast<double>(nu);
  return regularized_incomplete_beta(0.5 * n, 0.5, n / (n + t * t));
}

TTestResult paired_t_test(std::span<const double> acc_a,
                          std::span<const double> acc_b) {
  if (acc_a.size() != 10 || acc_b.size() != 10) {
    throw std::invalid_argument("paired_t_test: exactly 10 fold accuracies required");
  }

  const double d11 = acc_a[0] - acc_b[0];
  double pooled = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const double d1 = acc_a[2 * rep] - acc_b[2 * rep];
    const double d2 = acc_a[2 * rep + 1] - acc_b[2 * rep + 1];
    const double dbar = 0.5 * (d1 + d2);
    pooled += (d1 - dbar) * (d1 - dbar) + (d2 - dbar) * (d2 - dbar);
  }
  const double denom_sq = pooled / 5.0;

  TTestResult result;
  result.degrees_of_freedom = 5;
  if (denom_sq == 0.0) {
    if (d11 == 0.0) {
      result.t_statistic = 0.0;
      result.p_value = 1.0;
    } else {
      result.t_statistic = std::copysign(
          std::numeric_limits<double>::infinity(), d11);
      result.p_value = 0.0;
      result.degenerate = true;
    }
  } else {
    result.t_statistic = d11 / std::sqrt(denom_sq);
    result.p_value = student_t_two_sided_p(result.t_statistic, 5);
  }
  result.significant = result.p_value < 0.05;
  return result;
}

}  // namespace qvc
