#pragma once

#include <string>

#include "vqelab/fermion.hpp"
#include "vqelab/pauli.hpp"

namespace vqelab {

/// H = -sum_{i=1}^{n-1} Z_i Z_{i+1} (open chain, no external field).
Hamiltonian build_ising(int n_qubits);

enum class Boundary { open, periodic };

/// Jordan-Wigner image of the 1D Fermi-Hubbard Hamiltonian,
/// -t sum_{<ij>,s} (c+_{i,s} c_{j,s} + h.c.) + U sum_i n_{i,up} n_{i,down},
/// with interleaved spin-orbitals (mode 2i = site i up, 2i+1 = down).
Hamiltonian build_hubbard(int n_sites, double t, double u, Boundary boundary = Boundary::open);

/// Load a Hamiltonian from the JSON schema
/// {"n_qubits", "identity_offset", "terms": [{"pauli", "coeff"}...], "metadata"}.
/// All-identity rows fold into the identity offset; duplicates merge.
Hamiltonian load_hamiltonian(const std::string& path);

/// Write a Hamiltonian in the same schema.
void save_hamiltonian(const Hamiltonian& h, const std::string& path);

}  // namespace vqelab
