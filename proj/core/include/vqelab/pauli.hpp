#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqelab/statevector.hpp"

namespace vqelab {

/// One weighted Pauli string. Qubit 0 is the leftmost character.
struct PauliTerm {
  std::string paulis;   // over {I, X, Y, Z}
  double coefficient = 0.0;
};

/// Bit-mask form of a Pauli string for O(2^n) application.
struct MaskedPauli {
  std::uint64_t flip_mask = 0;   // X or Y positions (index XOR)
  std::uint64_t phase_mask = 0;  // Y or Z positions (sign = parity of index & mask)
  int y_count = 0;               // global factor i^y_count
  double coefficient = 0.0;

  /// phase(i) * coefficient-free unit phase for basis index i.
  Complex phase(std::uint64_t index) const {
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Complex ph = kIPow[y_count & 3];
    if (std::popcount(index & phase_mask) & 1) ph = -ph;
    return ph;
  }
};

MaskedPauli compile_pauli(const std::string& paulis, double coefficient, int n_qubits);

struct HamiltonianMetadata {
  std::string name;
  std::optional<double> e0_reference;
};

/// Weighted Pauli-string sum with the all-identity coefficient kept separate.
/// Duplicate strings are merged at construction; negligible terms dropped.
class Hamiltonian {
 public:
  Hamiltonian(int n_qubits, std::vector<PauliTerm> terms, double identity_offset = 0.0,
              double merge_threshold = 1e-12);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  const std::vector<MaskedPauli>& masked_terms() const { return masked_; }
  double identity_offset() const { return identity_offset_; }

  /// Sum of |coefficient| over non-identity terms.
  double coefficient_l1() const;

  HamiltonianMetadata& metadata() { return metadata_; }
  const HamiltonianMetadata& metadata() const { return metadata_; }

 private:
  int n_qubits_;
  std::vector<PauliTerm> terms_;
  std::vector<MaskedPauli> masked_;
  double identity_offset_;
  HamiltonianMetadata metadata_;
};

/// <psi| H |psi>. Imaginary residue below 1e-9 is discarded.
double expectation(const Statevector& state, const Hamiltonian& h);

/// <H^2> - <H>^2 >= 0, via accumulating H|psi> term by term.
double variance(const Statevector& state, const Hamiltonian& h);

/// out += coeff-weighted P|state| for one masked string (helper for H|psi>).
void accumulate_pauli_apply(const Statevector& state, const MaskedPauli& term,
                            std::vector<Complex>& out);

/// <psi| P |psi> for a single masked string (coefficient not applied).
Complex pauli_expectation_unit(const Statevector& state, const MaskedPauli& term);

/// In-place exp(-i * angle * P); the caller scales the angle by any coefficient.
void apply_pauli_rotation(Statevector& state, const MaskedPauli& term, double angle);
void apply_pauli_rotation(Statevector& state, const PauliTerm& term, double angle);

}  // namespace vqelab
