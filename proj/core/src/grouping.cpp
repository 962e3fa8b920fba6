#include "vqelab/grouping.hpp"

#include <numeric>

namespace vqelab {

namespace {
constexpr double kHalfPi = 1.57079632679489661923;
}

bool qubitwise_commute(const std::string& a, const std::string& b) {
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q] != 'I' && b[q] != 'I' && a[q] != b[q]) return false;
  }
  return true;
}

std::vector<std::vector<int>> greedy_qubitwise_groups(const std::vector<PauliTerm>& terms,
                                                      const std::vector<int>& order) {
  std::vector<std::vector<int>> groups;
  std::vector<std::string> letters;  // resolved letter per qubit per group
  for (int idx : order) {
    const std::string& s = terms[idx].paulis;
    bool placed = false;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (qubitwise_commute(letters[g], s)) {
        groups[g].push_back(idx);
        for (std::size_t q = 0; q < s.size(); ++q) {
          if (s[q] != 'I') letters[g][q] = s[q];
        }
        placed = true;
        break;
      }
    }
    if (!placed) {
      groups.push_back({idx});
      letters.push_back(s);
    }
  }
  return groups;
}

MeasurementGrouping build_grouping(const Hamiltonian& h) {
  MeasurementGrouping out;
  std::vector<int> order(h.terms().size());
  std::iota(order.begin(), order.end(), 0);
  out.groups = greedy_qubitwise_groups(h.terms(), order);

  for (const auto& group : out.groups) {
    std::string letters(h.n_qubits(), 'I');
    for (int idx : group) {
      const std::string& s = h.terms()[idx].paulis;
      for (int q = 0; q < h.n_qubits(); ++q) {
        if (s[q] != 'I') letters[q] = s[q];
      }
    }
    std::vector<GateOp> gates;
    for (int q = 0; q < h.n_qubits(); ++q) {
      if (letters[q] == 'X') {
        gates.push_back({GateKind::h, q});
      } else if (letters[q] == 'Y') {
        gates.push_back({GateKind::rz, q, -1, -1, -kHalfPi});
        gates.push_back({GateKind::h, q});
      }
    }
    out.resolved_letters.push_back(std::move(letters));
    out.basis_changes.push_back(std::move(gates));
  }
  return out;
}

}  // namespace vqelab
