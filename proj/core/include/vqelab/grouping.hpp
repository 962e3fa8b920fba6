#pragma once

#include <string>
#include <vector>

#include "vqelab/gates.hpp"
#include "vqelab/pauli.hpp"

namespace vqelab {

/// True when the strings agree or are identity on every qubit.
bool qubitwise_commute(const std::string& a, const std::string& b);

/// Greedy first-fit coloring of `terms` visited in `order`; each group is a
/// list of indices into `terms`.
std::vector<std::vector<int>> greedy_qubitwise_groups(const std::vector<PauliTerm>& terms,
                                                      const std::vector<int>& order);

/// Commuting measurement groups with their single-qubit basis changes
/// (X -> H, Y -> RZ(-pi/2) then H), mapping every letter onto Z.
struct MeasurementGrouping {
  std::vector<std::vector<int>> groups;             // term indices, file order
  std::vector<std::vector<GateOp>> basis_changes;   // per group
  std::vector<std::string> resolved_letters;        // per group, per qubit (I if unused)

  std::size_t n_groups() const { return groups.size(); }
};

MeasurementGrouping build_grouping(const Hamiltonian& h);

}  // namespace vqelab
