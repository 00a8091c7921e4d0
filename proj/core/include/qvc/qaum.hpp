#pragma once

#include <map>
#include <span>
#include <vector>

#include "qvc/simulator.hpp"

namespace qvc {

/// Architecture descriptor for one learner: a single-qubit circuit that
/// alternates feature-encoding Z-rotations with trainable ZXZ blocks.
///
/// Gate order: block 0, then for each repetition r = 1..depth and each
/// feature j = 1..n, an encoding gate Rz(x_j) followed by a trainable block.
/// That is depth*n encoding gates and depth*n + 1 blocks of three angles each.
struct QaumCircuit {
  int num_features = 1;
  int depth = 1;

  int param_count() const { return 3 * (depth * num_features + 1); }
};

/// Trainable angles, laid out block-by-block as (z1, x, z2) triples.
using ParameterVector = std::vector<double>;

/// Coefficient magnitudes of the circuit output seen as a Fourier series in
/// one feature, indexed by signed integer frequency.
struct FrequencySpectrum {
  std::map<int, double> entries;

  /// Fraction of total magnitude at frequencies outside {-band..band}.
  double out_of_band_fraction(int band) const;
};

QaumCircuit build_circuit(int num_features, int depth);

/// Z-expectation of the circuit output for one feature vector.
/// Features must already be scaled into [0, pi].
double evaluate(const QaumCircuit& circuit, std::span<const double> params,
                std::span<const double> x);

/// p = (1 - <Z>) / 2, the probability assigned to class 1.
double predict_proba(const QaumCircuit& circuit, std::span<const double> params,
                     std::span<const double> x);

/// Thresholds predict_proba at 0.5; ties classify as 1.
int predict(const QaumCircuit& circuit, std::span<const double> params,
            std::span<const double> x);

/// DFT of the circuit output sampled over one fundamental period (2*pi) of
/// the chosen feature, with the remaining features held at pi/2.
/// grid_size must be at least 4*depth + 1.
FrequencySpectrum fourier_spectrum(const QaumCircuit& circuit,
                                   std::span<const double> params,
                                   int feature_index, int grid_size);

/// Repeated circuit evaluation over a fixed sample matrix. Encoding phases
/// depend only on the data, so they are computed once here; per call only the
/// trainable block matrices are rebuilt. Produces bit-identical results to
/// evaluate() on each row.
class BatchEvaluator {
 public:
  BatchEvaluator(const QaumCircuit& circuit, const std::vector<double>& features,
                 int rows, int cols);

  void evaluate_all(std::span<const double> params, std::span<double> out) const;

  int rows() const { return rows_; }
  const QaumCircuit& circuit() const { return circuit_; }

 private:
  QaumCircuit circuit_;
  int rows_ = 0;
  std::vector<complexd> phases_;  // rows x num_features, e^{-i x/2}
};

}  // namespace qvc
