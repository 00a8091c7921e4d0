#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qvc/pca.hpp"
#include "qvc/rng.hpp"

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = 2.0 * qvc::uniform_double(gen) - 1.0;
  }
  return m;
}

}  // namespace

TEST_CASE("components are orthonormal and variances non-increasing") {
  const auto samples = random_matrix(120, 10, 42);
  const auto t = qvc::pca_fit(samples, 6);
  REQUIRE(t.components.rows() == 6);
  REQUIRE(t.components.cols() == 10);

  const Eigen::MatrixXd gram = t.components * t.components.transpose();
  CHECK((gram - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-8);

  for (int k = 1; k < 6; ++k) {
    CHECK(t.explained_variance(k) <= t.explained_variance(k - 1) + 1e-12);
    CHECK(t.explained_variance(k) >= 0.0);
  }
}

TEST_CASE("full-rank fit preserves pairwise distances") {
  const auto samples = random_matrix(40, 8, 7);
  const auto t = qvc::pca_fit(samples, 8);
  const auto projected = qvc::pca_project(samples, t);
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) {
      const double original = (samples.row(i) - samples.row(j)).norm();
      const double rotated = (projected.row(i) - projected.row(j)).norm();
      CHECK(rotated == doctest::Approx(original).epsilon(1e-8));
    }
  }
}

TEST_CASE("collinear data concentrates variance in one component") {
  std::mt19937_64 gen(9);
  Eigen::MatrixXd samples(50, 3);
  const Eigen::Vector3d direction(0.5, -1.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    samples.row(i) = (4.0 * qvc::uniform_double(gen) - 2.0) * direction.transpose();
  }
  const auto t = qvc::pca_fit(samples, 1);
  CHECK(t.explained_variance(0) > 0.0);
  // The single component captures essentially all the centered variance.
  const Eigen::MatrixXd centered = samples.rowwise() - samples.colwise().mean();
  const auto projected = qvc::pca_project(samples, t);
  CHECK(projected.squaredNorm() == doctest::Approx(centered.squaredNorm()).epsilon(1e-8));
}

TEST_CASE("truncation error equals the discarded eigenvalue mass") {
  // Reconstruction through k components loses exactly the trailing
  // eigenvalues of the covariance; checked against the fit's own variances
  // computed on an independent full decomposition.
  const auto samples = random_matrix(100, 30, 77);
  const auto full = qvc::pca_fit(samples, 30);

  for (int k : {8, 15, 29}) {
    const auto t = qvc::pca_fit(samples, k);
    const auto projected = qvc::pca_project(samples, t);
    const Eigen::MatrixXd reconstructed =
        (projected * t.components).rowwise() + t.mean.transpose();

    // Sample-covariance convention: divide by m - 1, matching the fit.
    const double rss = (samples - reconstructed).squaredNorm() /
                       static_cast<double>(samples.rows() - 1);
    double discarded = 0.0;
    for (int j = k; j < 30; ++j) discarded += full.explained_variance(j);
    CHECK(rss == doctest::Approx(discarded).epsilon(1e-6));
  }
}

TEST_CASE("projection subtracts the stored mean") {
  auto samples = random_matrix(60, 4, 13);
  samples.array() += 5.0;  // large offset: mean handling must be explicit
  const auto t = qvc::pca_fit(samples, 4);
  const auto projected = qvc::pca_project(samples, t);
  CHECK(projected.colwise().mean().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("repeated fits are identical") {
  const auto samples = random_matrix(80, 6, 21);
  const auto a = qvc::pca_fit(samples, 3);
  const auto b = qvc::pca_fit(samples, 3);
  CHECK((a.components - b.components).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.mean - b.mean).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("argument validation") {
  const auto samples = random_matrix(10, 4, 31);
  CHECK_THROWS_AS(qvc::pca_fit(samples, 5), std::invalid_argument);
  CHECK_THROWS_AS(qvc::pca_fit(samples, 0), std::invalid_argument);
  CHECK_THROWS_AS(qvc::pca_fit(random_matrix(3, 4, 32), 4), std::invalid_argument);
}
