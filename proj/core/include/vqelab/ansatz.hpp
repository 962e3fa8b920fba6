#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vqelab/gates.hpp"
#include "vqelab/pauli.hpp"

namespace vqelab {

enum class Rotation { ry };
enum class Entangler { cx, cz };
enum class Entanglement { linear, circular };

/// Parameterized state-preparation circuit. Two families:
///  - two_local: alternating single-qubit rotation and entangler layers,
///    n_params = n_qubits * (reps + 1);
///  - tvha: layers of exponentiated Hamiltonian terms, truncated by cumulative
///    |coefficient| weight p, one shared parameter per qubit-wise commuting
///    group per layer, starting from a reference occupation basis state.
class Ansatz {
 public:
  enum class Family { two_local, tvha };

  int n_qubits() const { return n_qubits_; }
  int n_params() const { return n_params_; }
  std::uint64_t initial_state() const { return initial_state_; }
  Family family() const { return family_; }
  const std::string& description() const { return description_; }

  /// All rotation-gate generators square to identity after scaling, so the
  /// pi/2 parameter-shift rule is exact.
  bool supports_parameter_shift() const { return family_ == Family::two_local; }

  Statevector prepare(std::span<const double> theta) const;

  // tvha introspection
  const std::vector<std::vector<MaskedPauli>>& parameter_groups() const { return groups_; }
  const std::vector<int>& retained_term_indices() const { return retained_; }
  int n_layers() const { return n_layers_; }

  friend Ansatz build_twolocal(int, int, Rotation, Entangler, Entanglement);
  friend Ansatz build_tvha(const Hamiltonian&, double, int, std::uint64_t);

 private:
  Ansatz() = default;

  int n_qubits_ = 0;
  int n_params_ = 0;
  std::uint64_t initial_state_ = 0;
  Family family_ = Family::two_local;
  std::string description_;

  std::vector<GateOp> ops_;                        // two_local
  std::vector<std::vector<MaskedPauli>> groups_;   // tvha, ranked grouping
  std::vector<int> retained_;                      // tvha, indices into h.terms()
  int n_layers_ = 0;
};

Ansatz build_twolocal(int n_qubits, int reps, Rotation rotation = Rotation::ry,
                      Entangler entangler = Entangler::cx,
                      Entanglement entanglement = Entanglement::linear);

/// Rank terms by |coefficient| (stable, descending), keep the smallest prefix
/// with cumulative weight >= p * total (at least one term), group them
/// qubit-wise, and expose one parameter per group per layer.
Ansatz build_tvha(const Hamiltonian& h, double p, int n_layers, std::uint64_t hf_occupation);

}  // namespace vqelab
