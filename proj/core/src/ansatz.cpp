#include "vqelab/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vqelab/errors.hpp"
#include "vqelab/grouping.hpp"

namespace vqelab {

Statevector Ansatz::prepare(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != n_params_)
    throw ConfigError("parameter vector length " + std::to_string(theta.size()) +
                      " does not match ansatz n_params " + std::to_string(n_params_));
  for (double v : theta) {
    if (!std::isfinite(v)) throw ConfigError("parameter vector contains a non-finite entry");
  }
  Statevector state = Statevector::basis_state(n_qubits_, initial_state_);
  if (family_ == Family::two_local) {
    for (const auto& op : ops_) {
      apply_gate(state, op, op.param >= 0 ? theta[op.param] : op.angle);
    }
  } else {
    const int n_groups = static_cast<int>(groups_.size());
    for (int layer = 0; layer < n_layers_; ++layer) {
      for (int g = 0; g < n_groups; ++g) {
        const double t = theta[layer * n_groups + g];
        for (const auto& term : groups_[g]) {
          apply_pauli_rotation(state, term, t * term.coefficient);
        }
      }
    }
  }
  return state;
}

Ansatz build_twolocal(int n_qubits, int reps, Rotation rotation, Entangler entangler,
                      Entanglement entanglement) {
  if (n_qubits < 1) throw ConfigError("two_local needs at least one qubit");
  if (reps < 1) throw ConfigError("two_local reps must be >= 1");
  (void)rotation;  // single supported rotation family

  Ansatz a;
  a.family_ = Ansatz::Family::two_local;
  a.n_qubits_ = n_qubits;
  a.initial_state_ = 0;
  int param = 0;
  const GateKind ent = entangler == Entangler::cx ? GateKind::cx : GateKind::cz;
  for (int r = 0; r < reps; ++r) {
    for (int q = 0; q < n_qubits; ++q) a.ops_.push_back({GateKind::ry, q, -1, param++});
    for (int q = 0; q + 1 < n_qubits; ++q) a.ops_.push_back({ent, q, q + 1});
    if (entanglement == Entanglement::circular && n_qubits > 2)
      a.ops_.push_back({ent, n_qubits - 1, 0});
  }
  for (int q = 0; q < n_qubits; ++q) a.ops_.push_back({GateKind::ry, q, -1, param++});
  a.n_params_ = param;
  a.description_ = "twolocal(reps=" + std::to_string(reps) +
                   ", entangler=" + (entangler == Entangler::cx ? "cx" : "cz") +
                   ", entanglement=" + (entanglement == Entanglement::linear ? "linear" : "circular") +
                   ")";
  return a;
}

Ansatz build_tvha(const Hamiltonian& h, double p, int n_layers, std::uint64_t hf_occupation) {
  if (h.terms().empty()) throw ConfigError("tvha needs a Hamiltonian with at least one term");
  if (!(p > 0.0) || p > 1.0) throw ConfigError("tvha truncation p must be in (0, 1]");
  if (n_layers < 1) throw ConfigError("tvha needs at least one layer");
  if (hf_occupation >= (std::uint64_t{1} << h.n_qubits()))
    throw ConfigError("hf_occupation index out of range");

  // Stable rank by |coefficient| descending, original index ascending.
  std::vector<int> ranked(h.terms().size());
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(), [&](int i, int j) {
    return std::abs(h.terms()[i].coefficient) > std::abs(h.terms()[j].coefficient);
  });

  const double total = h.coefficient_l1();
  double cum = 0.0;
  std::vector<int> retained;
  for (int idx : ranked) {
    retained.push_back(idx);
    cum += std::abs(h.terms()[idx].coefficient);
    if (cum >= p * total) break;
  }

  const auto groups = greedy_qubitwise_groups(h.terms(), retained);

  Ansatz a;
  a.family_ = Ansatz::Family::tvha;
  a.n_qubits_ = h.n_qubits();
  a.initial_state_ = hf_occupation;
  a.n_layers_ = n_layers;
  a.retained_ = retained;
  for (const auto& group : groups) {
    std::vector<MaskedPauli> masked;
    for (int idx : group) masked.push_back(h.masked_terms()[idx]);
    a.groups_.push_back(std::move(masked));
  }
  a.n_params_ = static_cast<int>(a.groups_.size()) * n_layers;
  a.description_ = "tvha(p=" + std::to_string(p) + ", layers=" + std::to_string(n_layers) +
                   ", groups=" + std::to_string(a.groups_.size()) + ")";
  return a;
}

}  // namespace vqelab
