#pragma once

#include <span>

namespace qvc {

struct TTestResult {
  double t_statistic = 0.0;
  double p_value = 1.0;
  int degrees_of_freedom = 5;
  bool significant = false;  // p_value < 0.05
  bool degenerate = false;   // zero pooled variance with nonzero mean difference
};

double accuracy(std::span<const int> predictions, std::span<const int> labels);

double mean(std::span<const double> values);

/// Population standard deviation (divide by n) over the given values.
double std_dev(std::span<const double> values);

/// Regularized incomplete beta I_x(a, b) via Lentz's continued fraction,
/// relative tolerance 1e-10.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided tail probability of Student's t distribution with nu degrees of
/// freedom: P(|T| >= |t|).
double student_t_two_sided_p(double t, int nu);

/// 5x2-CV paired t-test. Inputs are the 10 fold accuracies of each model in
/// order (rep 1 fold A, rep 1 fold B, rep 2 fold A, ...); the statistic is
/// d11 / sqrt((1/5) * sum of per-repetition difference variances), 5 d.o.f.
TTestResult paired_t_test(std::span<const double> acc_a,
                          std::span<const double> acc_b);

}  // namespace qvc
