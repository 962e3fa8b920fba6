#include "vqelab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "vqelab/errors.hpp"

namespace vqelab {

MaskedPauli compile_pauli(const std::string& paulis, double coefficient, int n_qubits) {
  if (static_cast<int>(paulis.size()) != n_qubits)
    throw ConfigError("Pauli string length " + std::to_string(paulis.size()) +
                      " does not match qubit count " + std::to_string(n_qubits));
  MaskedPauli m;
  m.coefficient = coefficient;
  for (int q = 0; q < n_qubits; ++q) {
    const std::uint64_t bit = 1ull << (n_qubits - 1 - q);
    switch (paulis[q]) {
      case 'I':
        break;
      case 'X':
        m.flip_mask |= bit;
        break;
      case 'Y':
        m.flip_mask |= bit;
        m.phase_mask |= bit;
        ++m.y_count;
        break;
      case 'Z':
        m.phase_mask |= bit;
        break;
      default:
        throw ConfigError(std::string("invalid Pauli letter '") + paulis[q] + "' in \"" + paulis +
                          "\"");
    }
  }
  return m;
}

Hamiltonian::Hamiltonian(int n_qubits, std::vector<PauliTerm> terms, double identity_offset,
                         double merge_threshold)
    : n_qubits_(n_qubits), identity_offset_(identity_offset) {
  if (n_qubits < 1 || n_qubits > 28) throw ConfigError("qubit count out of range [1, 28]");
  std::unordered_map<std::string, std::size_t> seen;
  for (auto& t : terms) {
    if (!std::isfinite(t.coefficient))
      throw ConfigError("non-finite coefficient for Pauli string \"" + t.paulis + "\"");
    if (static_cast<int>(t.paulis.size()) != n_qubits)
      throw ConfigError("Pauli string \"" + t.paulis + "\" length does not match qubit count " +
                        std::to_string(n_qubits));
    if (t.paulis.find_first_not_of("IXYZ") != std::string::npos)
      throw ConfigError("invalid Pauli alphabet in \"" + t.paulis + "\"");
    if (t.paulis == std::string(static_cast<std::size_t>(n_qubits), 'I')) {
      identity_offset_ += t.coefficient;
      continue;
    }
    auto it = seen.find(t.paulis);
    if (it == seen.end()) {
      seen.emplace(t.paulis, terms_.size());
      terms_.push_back(std::move(t));
    } else {
      terms_[it->second].coefficient += t.coefficient;
    }
  }
  std::erase_if(terms_, [&](const PauliTerm& t) { return std::abs(t.coefficient) < merge_threshold; });
  masked_.reserve(terms_.size());
  for (const auto& t : terms_) masked_.push_back(compile_pauli(t.paulis, t.coefficient, n_qubits_));
}

double Hamiltonian::coefficient_l1() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

Complex pauli_expectation_unit(const Statevector& state, const MaskedPauli& term) {
  const std::uint64_t dim = state.dim();
  Complex acc = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    // <psi|P|psi> = sum_i conj(amp[i ^ flip]) * phase(i) * amp[i]
    acc += std::conj(state[i ^ term.flip_mask]) * term.phase(i) * state[i];
  }
  return acc;
}

double expectation(const Statevector& state, const Hamiltonian& h) {
  if (state.n_qubits() != h.n_qubits())
    throw ConfigError("state dimension does not match Hamiltonian qubit count");
  Complex acc = h.identity_offset();
  for (const auto& t : h.masked_terms()) acc += t.coefficient * pauli_expectation_unit(state, t);
  return acc.real();
}

void accumulate_pauli_apply(const Statevector& state, const MaskedPauli& term,
                            std::vector<Complex>& out) {
  const std::uint64_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    out[i ^ term.flip_mask] += term.coefficient * term.phase(i) * state[i];
  }
}

double variance(const Statevector& state, const Hamiltonian& h) {
  if (state.n_qubits() != h.n_qubits())
    throw ConfigError("state dimension does not match Hamiltonian qubit count");
  std::vector<Complex> hpsi(state.dim(), Complex{0.0, 0.0});
  for (const auto& t : h.masked_terms()) accumulate_pauli_apply(state, t, hpsi);
  const double offset = h.identity_offset();
  Complex exp_acc = 0.0;
  double h2 = 0.0;
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    hpsi[i] += offset * state[i];
    exp_acc += std::conj(state[i]) * hpsi[i];
    h2 += std::norm(hpsi[i]);
  }
  const double mean = exp_acc.real();
  return std::max(0.0, h2 - mean * mean);
}

void apply_pauli_rotation(Statevector& state, const MaskedPauli& term, double angle) {
  if (!std::isfinite(angle)) throw ConfigError("rotation angle must be finite");
  const double c = std::cos(angle);
  const Complex ms{0.0, -std::sin(angle)};  // -i sin(angle)
  const std::uint64_t dim = state.dim();
  if (term.flip_mask == 0) {
    // Diagonal string: amplitude-wise phase, no pairing needed.
    for (std::uint64_t i = 0; i < dim; ++i) state[i] *= (c + ms * term.phase(i));
    return;
  }
  // exp(-i a P) = cos(a) I - i sin(a) P; pair (i, i ^ flip) visited once.
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t j = i ^ term.flip_mask;
    if (j < i) continue;
    const Complex ai = state[i];
    const Complex aj = state[j];
    // P|i> = phase(i)|j>, P|j> = phase(j)|i>
    state[j] = c * aj + ms * term.phase(i) * ai;
    state[i] = c * ai + ms * term.phase(j) * aj;
  }
}

void apply_pauli_rotation(Statevector& state, const PauliTerm& term, double angle) {
  apply_pauli_rotation(state, compile_pauli(term.paulis, term.coefficient, state.n_qubits()), angle);
}

}  // namespace vqelab
