#pragma once

#include "vqelab/pauli.hpp"
#include "vqelab/statevector.hpp"

namespace vqelab {

struct GroundState {
  double energy = 0.0;
  Statevector state;
};

/// Smallest eigenvalue of H with a unit eigenvector. Dense diagonalization up
/// to 10 qubits, matrix-free Lanczos with full reorthogonalization above;
/// hard capability limit at 14 qubits.
GroundState exact_ground_energy(const Hamiltonian& h);

inline constexpr int kExactDiagMaxQubits = 14;

}  // namespace vqelab
