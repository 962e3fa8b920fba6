#include "vqelab/gates.hpp"

#include <cmath>

#include "vqelab/errors.hpp"

namespace vqelab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_qubit(const Statevector& state, int q) {
  if (q < 0 || q >= state.n_qubits()) throw ConfigError("qubit index out of range");
}

/// Apply a 2x2 unitary [[a, b], [c, d]] to one qubit.
void apply_single(Statevector& state, int qubit, Complex a, Complex b, Complex c, Complex d) {
  check_qubit(state, qubit);
  const std::uint64_t bit = state.qubit_bit(qubit);
  const std::uint64_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const std::uint64_t j = i | bit;
    const Complex a0 = state[i];
    const Complex a1 = state[j];
    state[i] = a * a0 + b * a1;
    state[j] = c * a0 + d * a1;
  }
}

}  // namespace

void apply_ry(Statevector& state, int qubit, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  apply_single(state, qubit, c, -s, s, c);
}

void apply_rx(Statevector& state, int qubit, double theta) {
  const double c = std::cos(theta / 2.0);
  const Complex ms{0.0, -std::sin(theta / 2.0)};
  apply_single(state, qubit, c, ms, ms, c);
}

void apply_rz(Statevector& state, int qubit, double theta) {
  const Complex e0 = std::polar(1.0, -theta / 2.0);
  const Complex e1 = std::polar(1.0, theta / 2.0);
  apply_single(state, qubit, e0, 0.0, 0.0, e1);
}

void apply_h(Statevector& state, int qubit) {
  apply_single(state, qubit, kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
}

void apply_x(Statevector& state, int qubit) { apply_single(state, qubit, 0.0, 1.0, 1.0, 0.0); }

void apply_cx(Statevector& state, int control, int target) {
  check_qubit(state, control);
  check_qubit(state, target);
  if (control == target) throw ConfigError("cx control equals target");
  const std::uint64_t cbit = state.qubit_bit(control);
  const std::uint64_t tbit = state.qubit_bit(target);
  const std::uint64_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(state[i], state[i | tbit]);
  }
}

void apply_cz(Statevector& state, int control, int target) {
  check_qubit(state, control);
  check_qubit(state, target);
  if (control == target) throw ConfigError("cz control equals target");
  const std::uint64_t mask = state.qubit_bit(control) | state.qubit_bit(target);
  const std::uint64_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & mask) == mask) state[i] = -state[i];
  }
}

void apply_gate(Statevector& state, const GateOp& op, double theta) {
  switch (op.kind) {
    case GateKind::ry:
      apply_ry(state, op.q0, theta);
      break;
    case GateKind::rx:
      apply_rx(state, op.q0, theta);
      break;
    case GateKind::rz:
      apply_rz(state, op.q0, theta);
      break;
    case GateKind::cx:
      apply_cx(state, op.q0, op.q1);
      break;
    case GateKind::cz:
      apply_cz(state, op.q0, op.q1);
      break;
    case GateKind::h:
      apply_h(state, op.q0);
      break;
    case GateKind::x:
      apply_x(state, op.q0);
      break;
  }
}

}  // namespace vqelab
