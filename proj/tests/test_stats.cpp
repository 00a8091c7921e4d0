#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "qvc/rng.hpp"
#include "qvc/stats.hpp"
#include "support/oracles.hpp"

TEST_CASE("accuracy counts agreements") {
  const std::vector<int> pred{1, 0, 1, 1};
  const std::vector<int> truth{1, 0, 0, 1};
  CHECK(qvc::accuracy(pred, truth) == doctest::Approx(0.75));
  CHECK_THROWS_AS(qvc::accuracy({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(qvc::accuracy(pred, std::vector<int>{1}), std::invalid_argument);
}

TEST_CASE("mean and population standard deviation") {
  const std::vector<double> values{1.0, 2.0, 3.0, 4.0};
  CHECK(qvc::mean(values) == doctest::Approx(2.5).epsilon(1e-15));
  // Population convention: divide by n, not n-1.
  CHECK(qvc::std_dev(values) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));

  const std::vector<double> constant{0.7, 0.7, 0.7};
  CHECK(qvc::std_dev(constant) == doctest::Approx(0.0));
  CHECK_THROWS_AS(qvc::mean({}), std::invalid_argument);
}

TEST_CASE("regularized incomplete beta: fixed points and symmetry") {
  // I_x(1, 1) is the identity; I_0.5(a, a) = 0.5 by symmetry.
  CHECK(qvc::regularized_incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(qvc::regularized_incomplete_beta(2.5, 2.5, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(qvc::regularized_incomplete_beta(0.5, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-10));

  // I_x(2, 1) = x^2.
  CHECK(qvc::regularized_incomplete_beta(2.0, 1.0, 0.7) == doctest::Approx(0.49).epsilon(1e-10));

  // Endpoints and the reflection identity I_x(a,b) = 1 - I_{1-x}(b,a).
  CHECK(qvc::regularized_incomplete_beta(3.0, 4.0, 0.0) == 0.0);
  CHECK(qvc::regularized_incomplete_beta(3.0, 4.0, 1.0) == 1.0);
  std::mt19937_64 gen(12);
  for (int i = 0; i < 50; ++i) {
    const double a = 0.5 + 4.0 * qvc::uniform_double(gen);
    const double b = 0.5 + 4.0 * qvc::uniform_double(gen);
    const double x = qvc::uniform_double(gen);
    const double direct = qvc::regularized_incomplete_beta(a, b, x);
    const double reflected = 1.0 - qvc::regularized_incomplete_beta(b, a, 1.0 - x);
    CHECK(direct == doctest::Approx(reflected).epsilon(1e-9));
    CHECK(direct >= 0.0);
    CHECK(direct <= 1.0);
  }
}

TEST_CASE("regularized incomplete beta validates arguments") {
  CHECK_THROWS_AS(qvc::regularized_incomplete_beta(0.0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(qvc::regularized_incomplete_beta(1.0, -2.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(qvc::regularized_incomplete_beta(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("t-distribution tail matches the numerical-integration oracle") {
  for (int nu : {1, 2, 5, 30}) {
    for (double t : {0.0, 0.25, 0.5, 1.0, 2.0, 2.571, 5.0, 12.0}) {
      const double expected = oracle::t_two_sided_p(t, nu);
      CHECK(std::abs(qvc::student_t_two_sided_p(t, nu) - expected) < 1e-6);
      CHECK(std::abs(qvc::student_t_two_sided_p(-t, nu) - expected) < 1e-6);
    }
  }
}

TEST_CASE("t-distribution tail handles edge inputs") {
  CHECK(qvc::student_t_two_sided_p(0.0, 5) == doctest::Approx(1.0));
  CHECK(qvc::student_t_two_sided_p(std::numeric_limits<double>::infinity(), 5) == 0.0);
  CHECK(qvc::student_t_two_sided_p(-std::numeric_limits<double>::infinity(), 5) == 0.0);
  CHECK_THROWS_AS(qvc::student_t_two_sided_p(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(qvc::student_t_two_sided_p(std::nan(""), 5), std::invalid_argument);
}

TEST_CASE("paired t-test on a hand-computed example") {
  // Differences per fold: rep 1 (0.02, 0.04), rep 2 (0.00, 0.02),
  // rep 3 (0.04, 0.02), rep 4 (0.02, 0.00), rep 5 (0.02, 0.04).
  const std::vector<double> a{0.90, 0.88, 0.91, 0.89, 0.92, 0.90, 0.88, 0.90, 0.91, 0.87};
  const std::vector<double> b{0.88, 0.84, 0.91, 0.87, 0.88, 0.88, 0.86, 0.90, 0.89, 0.83};
  const auto result = qvc::paired_t_test(a, b);

  // t = d_11 / sqrt(mean of per-rep variances) with 5 degrees of freedom.
  CHECK(result.degrees_of_freedom == 5);
  CHECK(result.t_statistic == doctest::Approx(1.4142135623730951).epsilon(1e-9));
  CHECK(result.p_value == doctest::Approx(0.2164372292696856).epsilon(1e-6));
  CHECK(!result.significant);
  CHECK(!result.degenerate);
}

TEST_CASE("paired t-test is antisymmetric in its arguments") {
  std::mt19937_64 gen(55);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(10), b(10);
    for (int i = 0; i < 10; ++i) {
      a[static_cast<std::size_t>(i)] = 0.7 + 0.2 * qvc::uniform_double(gen);
      b[static_cast<std::size_t>(i)] = 0.7 + 0.2 * qvc::uniform_double(gen);
    }
    const auto ab = qvc::paired_t_test(a, b);
    const auto ba = qvc::paired_t_test(b, a);
    CHECK(ab.t_statistic == doctest::Approx(-ba.t_statistic).epsilon(1e-12));
    CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
    CHECK(ab.significant == ba.significant);
  }
}

TEST_CASE("paired t-test significance flag") {
  // All ten differences equal to 0.05 except tiny per-rep wiggle: large t.
  const std::vector<double> strong_a{0.95, 0.94, 0.95, 0.94, 0.95,
                                     0.94, 0.95, 0.94, 0.95, 0.94};
  const std::vector<double> strong_b{0.90, 0.88, 0.90, 0.88, 0.90,
                                     0.88, 0.90, 0.88, 0.90, 0.88};
  const auto result = qvc::paired_t_test(strong_a, strong_b);
  CHECK(result.p_value < 0.05);
  CHECK(result.significant);
}

TEST_CASE("paired t-test degenerate branches") {
  // Identical accuracy vectors: zero numerator, zero variance -> t=0, p=1.
  const std::vector<double> same(10, 0.9);
  const auto null_case = qvc::paired_t_test(same, same);
  CHECK(null_case.t_statistic == 0.0);
  CHECK(null_case.p_value == 1.0);
  CHECK(!null_case.degenerate);
  CHECK(!null_case.significant);

  // Constant nonzero difference: zero variance, nonzero numerator.
  std::vector<double> shifted(10, 0.85);
  const auto spike = qvc::paired_t_test(same, shifted);
  CHECK(std::isinf(spike.t_statistic));
  CHECK(spike.t_statistic > 0.0);
  CHECK(spike.p_value == 0.0);
  CHECK(spike.degenerate);
  CHECK(spike.significant);

  const auto spike_down = qvc::paired_t_test(shifted, same);
  CHECK(spike_down.t_statistic < 0.0);
  CHECK(spike_down.degenerate);
}

TEST_CASE("paired t-test requires exactly ten folds") {
  const std::vector<double> nine(9, 0.9);
  const std::vector<double> ten(10, 0.9);
  CHECK_THROWS_AS(qvc::paired_t_test(nine, ten), std::invalid_argument);
  CHECK_THROWS_AS(qvc::paired_t_test(ten, nine), std::invalid_argument);
}
