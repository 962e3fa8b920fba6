#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "vqelab/ansatz.hpp"
#include "vqelab/estimator.hpp"
#include "vqelab/optimizers.hpp"

namespace vqelab {

/// Parsed value of one config key: number, string, boolean, or number array.
using ConfigValue = std::variant<double, std::string, bool, std::vector<double>>;

/// Minimal TOML-style reader: [section] headers, key = value lines,
/// # comments, quoted strings, booleans, numbers, and flat number arrays.
std::map<std::string, std::map<std::string, ConfigValue>> parse_config_file(
    const std::string& path);
std::map<std::string, std::map<std::string, ConfigValue>> parse_config_text(
    const std::string& text, const std::string& origin);

struct HamiltonianSpec {
  std::string kind = "ising";  // ising | hubbard | file
  int n_qubits = 5;
  int n_sites = 2;
  double t = 1.0;
  double u = 1.0;
  std::string boundary = "open";
  std::string path;  // for kind = file
};

struct AnsatzSpec {
  std::string family = "twolocal";  // twolocal | tvha
  int reps = 2;
  std::string entangler = "cx";
  std::string entanglement = "linear";
  int layers = 2;
  double p = 1.0;
  std::string hf_occupation;  // bitstring, qubit 0 leftmost; empty = all zeros
};

struct NoiseSpec {
  std::string mode = "gaussian";
  std::int64_t shots = 6144;
};

struct RunSpec {
  int n_runs = 1;
  std::uint64_t seed = 12345;
  std::string init = "uniform01";  // uniform01 | zeros | custom
  std::vector<double> init_values;
  double tolerance = 0.1;
};

struct ReevalSpec {
  bool enabled = true;
  std::string mode = "exact";
  std::int64_t shots = 1000000;
};

struct ExperimentConfig {
  std::string name = "experiment";
  HamiltonianSpec hamiltonian;
  AnsatzSpec ansatz;
  OptimizerConfig optimizer;
  NoiseSpec noise;
  RunSpec run;
  ReevalSpec reevaluation;

  void validate() const;

  /// Hash over every result-affecting field; 16 hex digits.
  std::string hash() const;

  /// Canonical key=value listing (also the hash input).
  std::string canonical_text() const;

  /// Short human-readable tag for summaries.
  std::string label() const;
};

ExperimentConfig experiment_config_from_file(const std::string& path);
ExperimentConfig experiment_config_from_text(const std::string& text, const std::string& origin);

Hamiltonian build_hamiltonian(const HamiltonianSpec& spec);
std::shared_ptr<const Ansatz> build_ansatz(const AnsatzSpec& spec, const Hamiltonian& h);

/// Parse "0110..." (qubit 0 leftmost) into a basis index.
std::uint64_t occupation_index(const std::string& bits, int n_qubits);

}  // namespace vqelab
