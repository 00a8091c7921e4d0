#pragma once

#include <array>
#include <complex>

namespace qvc {

using complexd = std::complex<double>;

/// Pure state of a single qubit. Default-constructed as |0>.
struct QubitState {
  complexd amp0{1.0, 0.0};
  complexd amp1{0.0, 0.0};

  double squared_norm() const { return std::norm(amp0) + std::norm(amp1); }
};

enum class Axis { X, Y, Z };

/// A rotation about a Pauli axis, half-angle convention: exp(-i*angle*P/2).
struct RotationGate {
  Axis axis;
  double angle;
};

/// 2x2 complex matrix, row-major: [u00, u01, u10, u11].
using Mat2 = std::array<complexd, 4>;

Mat2 rotation_matrix(const RotationGate& gate);

Mat2 matmul(const Mat2& a, const Mat2& b);

QubitState apply_matrix(const QubitState& state, const Mat2& u);

/// Applies a rotation gate to a normalized state. Throws invalid_state_error
/// if the input norm deviates from 1 by more than 1e-6.
QubitState apply_gate(const QubitState& state, const RotationGate& gate);

/// <Z> = |amp0|^2 - |amp1|^2, clamped to [-1, 1].
double expectation_z(const QubitState& state);

}  // namespace qvc
