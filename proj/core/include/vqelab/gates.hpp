#pragma once

#include "vqelab/statevector.hpp"

namespace vqelab {

/// Standard gate set used by TwoLocal circuits and measurement basis changes.
/// Rotations use the half-angle convention, RY(t) = exp(-i t Y / 2).
enum class GateKind { ry, rx, rz, cx, cz, h, x };

struct GateOp {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;        // control-target partner for cx/cz
  int param = -1;     // parameter index; -1 = fixed angle
  double angle = 0.0; // used when param == -1
};

void apply_ry(Statevector& state, int qubit, double theta);
void apply_rx(Statevector& state, int qubit, double theta);
void apply_rz(Statevector& state, int qubit, double theta);
void apply_h(Statevector& state, int qubit);
void apply_x(Statevector& state, int qubit);
void apply_cx(Statevector& state, int control, int target);
void apply_cz(Statevector& state, int control, int target);

/// Dispatch one gate; theta ignored for fixed gates.
void apply_gate(Statevector& state, const GateOp& op, double theta);

}  // namespace vqelab
