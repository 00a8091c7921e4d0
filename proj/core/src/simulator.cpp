#include "qvc/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "qvc/errors.hpp"

namespace qvc {

Mat2 rotation_matrix(const RotationGate& gate) {
  if (!std::isfinite(gate.angle)) {
    throw std::invalid_argument("rotation_matrix: angle must be finite");
  }
  const double half = 0.5 * gate.angle;
  const double c = std::cos(half);
  const double s = std::sin(half);
  switch (gate.axis) {
    case Axis::X:
      return {complexd{c, 0.0}, complexd{0.0, -s}, complexd{0.0, -s}, complexd{c, 0.0}};
    case Axis::Y:
      return {complexd{c, 0.0}, complexd{-s, 0.0}, complexd{s, 0.0}, complexd{c, 0.0}};
    case Axis::Z:
      return {complexd{c, -s}, complexd{0.0, 0.0}, complexd{0.0, 0.0}, complexd{c, s}};
  }
  throw std::invalid_argument("rotation_matrix: unknown axis");
}

Mat2 matmul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

QubitState apply_matrix(const QubitState& state, const Mat2& u) {
  return {u[0] * state.amp0 + u[1] * state.amp1,
          u[2] * state.amp0 + u[3] * state.amp1};
}

QubitState apply_gate(const QubitState& state, const RotationGate& gate) {
  if (std::abs(state.squared_norm() - 1.0) > 1e-6) {
    throw invalid_state_error("apply_gate: input state is not normalized");
  }
  return apply_matrix(state, rotation_matrix(gate));
}

double expectation_z(const QubitState& state) {
  const double value = std::norm(state.amp0) - std::norm(state.amp1);
  if (value > 1.0) return 1.0;
  if (value < -1.0) return -1.0;
  return value;
}

}  // namespace qvc
