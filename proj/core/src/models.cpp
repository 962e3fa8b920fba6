#include "vqelab/models.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "vqelab/errors.hpp"

namespace vqelab {

Hamiltonian build_ising(int n_qubits) {
  if (n_qubits < 2 || n_qubits > 14)
    throw ConfigError("ising qubit count must be in [2, 14], got " + std::to_string(n_qubits));
  std::vector<PauliTerm> terms;
  terms.reserve(n_qubits - 1);
  for (int i = 0; i + 1 < n_qubits; ++i) {
    std::string s(n_qubits, 'I');
    s[i] = 'Z';
    s[i + 1] = 'Z';
    terms.push_back({s, -1.0});
  }
  Hamiltonian h(n_qubits, std::move(terms));
  h.metadata().name = "ising-" + std::to_string(n_qubits) + "q";
  h.metadata().e0_reference = -static_cast<double>(n_qubits - 1);
  return h;
}

Hamiltonian build_hubbard(int n_sites, double t, double u, Boundary boundary) {
  if (n_sites < 2 || n_sites > 7)
    throw ConfigError("hubbard site count must be in [2, 7], got " + std::to_string(n_sites));
  if (boundary == Boundary::periodic && n_sites < 3)
    throw ConfigError("periodic hubbard chain needs at least 3 sites");
  FermionOperator op;
  std::vector<std::pair<int, int>> bonds;
  for (int i = 0; i + 1 < n_sites; ++i) bonds.emplace_back(i, i + 1);
  if (boundary == Boundary::periodic) bonds.emplace_back(n_sites - 1, 0);
  for (const auto& [i, j] : bonds) {
    for (int s = 0; s < 2; ++s) {
      const int a = 2 * i + s;
      const int b = 2 * j + s;
      op.add(-t, {{a, true}, {b, false}});
      op.add(-t, {{b, true}, {a, false}});
    }
  }
  for (int i = 0; i < n_sites; ++i) {
    const int up = 2 * i;
    const int dn = 2 * i + 1;
    op.add(u, {{up, true}, {up, false}, {dn, true}, {dn, false}});
  }
  Hamiltonian h = jordan_wigner(op, 2 * n_sites);
  h.metadata().name = "hubbard-" + std::to_string(n_sites) + "site-" +
                      (boundary == Boundary::open ? "open" : "periodic");
  return h;
}

Hamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open Hamiltonian file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError("malformed JSON in " + path + ": " + e.what());
  }
  try {
    const int n_qubits = j.at("n_qubits").get<int>();
    const double offset = j.value("identity_offset", 0.0);
    std::vector<PauliTerm> terms;
    const auto& arr = j.at("terms");
    for (std::size_t idx = 0; idx < arr.size(); ++idx) {
      const auto& row = arr[idx];
      PauliTerm t{row.at("pauli").get<std::string>(), row.at("coeff").get<double>()};
      if (static_cast<int>(t.paulis.size()) != n_qubits)
        throw LoadError("term " + std::to_string(idx) + " in " + path + ": Pauli string \"" +
                        t.paulis + "\" length != n_qubits " + std::to_string(n_qubits));
      if (t.paulis.find_first_not_of("IXYZ") != std::string::npos)
        throw LoadError("term " + std::to_string(idx) + " in " + path +
                        ": invalid Pauli alphabet in \"" + t.paulis + "\"");
      if (!std::isfinite(t.coefficient))
        throw LoadError("term " + std::to_string(idx) + " in " + path +
                        ": non-finite coefficient");
      terms.push_back(std::move(t));
    }
    Hamiltonian h(n_qubits, std::move(terms), offset);
    if (j.contains("metadata")) {
      const auto& md = j["metadata"];
      h.metadata().name = md.value("name", "");
      if (md.contains("e0_reference") && !md["e0_reference"].is_null())
        h.metadata().e0_reference = md["e0_reference"].get<double>();
    }
    if (h.metadata().name.empty()) h.metadata().name = path;
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError("invalid Hamiltonian schema in " + path + ": " + e.what());
  }
}

void save_hamiltonian(const Hamiltonian& h, const std::string& path) {
  nlohmann::json j;
  j["n_qubits"] = h.n_qubits();
  j["identity_offset"] = h.identity_offset();
  j["terms"] = nlohmann::json::array();
  for (const auto& t : h.terms()) j["terms"].push_back({{"pauli", t.paulis}, {"coeff", t.coefficient}});
  j["metadata"]["name"] = h.metadata().name;
  if (h.metadata().e0_reference)
    j["metadata"]["e0_reference"] = *h.metadata().e0_reference;
  else
    j["metadata"]["e0_reference"] = nullptr;
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write Hamiltonian file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace vqelab
