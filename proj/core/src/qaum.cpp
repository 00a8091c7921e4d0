#include "qvc/qaum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qvc {

namespace {

// One trainable block Rz(z1), Rx(bx), Rz(z2) composed into a single 2x2 unitary.
Mat2 block_matrix(double z1, double bx, double z2) {
  const complexd p{std::cos(0.5 * z1), -std::sin(0.5 * z1)};
  const complexd q{std::cos(0.5 * z2), -std::sin(0.5 * z2)};
  const double c = std::cos(0.5 * bx);
  const complexd is{0.0, std::sin(0.5 * bx)};
  return {q * c * p, q * -is * std::conj(p), std::conj(q) * -is * p,
          std::conj(q) * c * std::conj(p)};
}

std::vector<Mat2> build_blocks(const QaumCircuit& circuit,
                               std::span<const double> params) {
  if (static_cast<int>(params.size()) != circuit.param_count()) {
    throw std::invalid_argument("qaum: parameter vector has length " +
                                std::to_string(params.size()) + ", expected " +
                                std::to_string(circuit.param_count()));
  }
  const int n_blocks = circuit.depth * circuit.num_features + 1;
  std::vector<Mat2> blocks(n_blocks);
  for (int b = 0; b < n_blocks; ++b) {
    blocks[b] = block_matrix(params[3 * b], params[3 * b + 1], params[3 * b + 2]);
  }
  return blocks;
}

// Runs the alternating encode/block sequence for one sample whose encoding
// phases e^{-i x_j / 2} are given per feature.
double run_circuit(const QaumCircuit& circuit, const std::vector<Mat2>& blocks,
                   const complexd* phases) {
  complexd a0 = blocks[0][0];
  complexd a1 = blocks[0][2];
  int b = 1;
  for (int rep = 0; rep < circuit.depth; ++rep) {
    for (int j = 0; j < circuit.num_features; ++j, ++b) {
      const complexd ph = phases[j];
      a0 *= ph;
      a1 *= std::conj(ph);
      const Mat2& u = blocks[b];
      const complexd t0 = u[0] * a0 + u[1] * a1;
      a1 = u[2] * a0 + u[3] * a1;
      a0 = t0;
    }
  }
  const double ez = std::norm(a0) - std::norm(a1);
  if (ez > 1.0) return 1.0;
  if (ez < -1.0) return -1.0;
  return ez;
}

std::vector<complexd> encoding_phases(std::span<const double> x) {
  std::vector<complexd> phases(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    phases[j] = complexd{std::cos(0.5 * x[j]), -std::sin(0.5 * x[j])};
  }
  return phases;
}

}  // namespace

double FrequencySpectrum::out_of_band_fraction(int band) const {
  double total = 0.0;
  double outside = 0.0;
  for (const auto& [freq, mag] : entries) {
    total += mag;
    if (freq > band || freq < -band) outside += mag;
  }
  return total > 0.0 ? outside / total : 0.0;
}

QaumCircuit build_circuit(int num_features, int depth) {
  if (num_features < 1) {
    throw std::invalid_argument("build_circuit: num_features must be >= 1");
  }
  if (depth < 1) {
    throw std::invalid_argument("build_circuit: depth must be >= 1");
  }
  return QaumCircuit{num_features, depth};
}

double evaluate(const QaumCircuit& circuit, std::span<const double> params,
                std::span<const double> x) {
  if (static_cast<int>(x.size()) != circuit.num_features) {
    throw std::invalid_argument("evaluate: feature vector has length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(circuit.num_features));
  }
  const auto blocks = build_blocks(circuit, params);
  const auto phases = encoding_phases(x);
  return run_circuit(circuit, blocks, phases.data());
}

double predict_proba(const QaumCircuit& circuit, std::span<const double> params,
                     std::span<const double> x) {
  return 0.5 * (1.0 - evaluate(circuit, params, x));
}

int predict(const QaumCircuit& circuit, std::span<const double> params,
            std::span<const double> x) {
  return predict_proba(circuit, params, x) >= 0.5 ? 1 : 0;
}

FrequencySpectrum fourier_spectrum(const QaumCircuit& circuit,
                                   std::span<const double> params,
                                   int feature_index, int grid_size) {
  if (feature_index < 0 || feature_index >= circuit.num_features) {
    throw std::invalid_argument("fourier_spectrum: feature index out of range");
  }
  if (grid_size < 4 * circuit.depth + 1) {
    throw std::invalid_argument(
        "fourier_spectrum: grid size below 4*depth+1 would alias the spectrum");
  }

  const auto blocks = build_blocks(circuit, params);
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<double> x(circuit.num_features, std::numbers::pi / 2.0);
  std::vector<double> samples(grid_size);
  for (int t = 0; t < grid_size; ++t) {
    x[feature_index] = two_pi * t / grid_size;
    const auto phases = encoding_phases(x);
    samples[t] = run_circuit(circuit, blocks, phases.data());
  }

  FrequencySpectrum spectrum;
  for (int bin = 0; bin < grid_size; ++bin) {
    complexd acc{0.0, 0.0};
    for (int t = 0; t < grid_size; ++t) {
      const double phase = -two_pi * bin * t / grid_size;
      acc += samples[t] * complexd{std::cos(phase), std::sin(phase)};
    }
    const int freq = bin <= grid_size / 2 ? bin : bin - grid_size;
    spectrum.entries[freq] = std::abs(acc) / grid_size;
  }
  return spectrum;
}

BatchEvaluator::BatchEvaluator(const QaumCircuit& circuit,
                               const std::vector<double>& features, int rows,
                               int cols)
    : circuit_(circuit), rows_(rows) {
  if (cols != circuit.num_features) {
    throw std::invalid_argument("BatchEvaluator: feature count mismatch");
  }
  if (static_cast<int>(features.size()) != rows * cols) {
    throw std::invalid_argument("BatchEvaluator: feature matrix size mismatch");
  }
  phases_.resize(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    phases_[i] = complexd{std::cos(0.5 * features[i]), -std::sin(0.5 * features[i])};
  }
}

void BatchEvaluator::evaluate_all(std::span<const double> params,
                                  std::span<double> out) const {
  if (static_cast<int>(out.size()) != rows_) {
    throw std::invalid_argument("BatchEvaluator: output span size mismatch");
  }
  const auto blocks = build_blocks(circuit_, params);
  const int n = circuit_.num_features;
  for (int r = 0; r < rows_; ++r) {
    out[r] = run_circuit(circuit_, blocks, phases_.data() + r * n);
  }
}

}  // namespace qvc
