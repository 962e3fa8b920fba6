#pragma once

#include <vector>

#include "vqelab/pauli.hpp"

namespace vqelab {

/// One ladder operator: creation (dagger) or annihilation on a mode.
struct LadderOp {
  int mode = 0;
  bool dagger = false;
};

/// coefficient * product of ladder operators, left to right.
struct FermionTerm {
  double coefficient = 0.0;
  std::vector<LadderOp> ops;
};

/// Real-weighted sum of ladder-operator products. Spin-orbital convention:
/// mode 2i = site/orbital i spin-up, mode 2i+1 = spin-down.
struct FermionOperator {
  std::vector<FermionTerm> terms;

  FermionOperator& add(double coefficient, std::vector<LadderOp> ops) {
    terms.push_back({coefficient, std::move(ops)});
    return *this;
  }
};

/// Jordan-Wigner transform: c_j -> (prod_{k<j} Z_k)(X_j + i Y_j)/2.
/// The total operator must be Hermitian (imaginary residues above 1e-12
/// raise a construction error).
Hamiltonian jordan_wigner(const FermionOperator& op, int n_modes);

}  // namespace vqelab
