#pragma once

#include <cstdint>
#include <string>

#include "vqelab/ansatz.hpp"
#include "vqelab/grouping.hpp"
#include "vqelab/pauli.hpp"
#include "vqelab/rng.hpp"

namespace vqelab {

enum class NoiseMode { exact, gaussian, sampled };

std::string to_string(NoiseMode mode);
NoiseMode noise_mode_from_string(const std::string& s);

/// One noisy energy evaluation with its variance bookkeeping.
struct EnergyEstimate {
  double value = 0.0;             // the estimate fed to the optimizer
  double true_expectation = 0.0;  // exact <H>, retained for analysis
  double variance_single_shot = 0.0;
  std::int64_t n_shots = 0;
  NoiseMode mode = NoiseMode::exact;

  /// sqrt(variance_single_shot / n_shots); 0 in exact mode.
  double sigma() const;
};

/// Precompiled sampling machinery for one Hamiltonian (grouping, basis
/// changes, per-term support masks). Reusable across evaluations.
class EstimatorContext {
 public:
  explicit EstimatorContext(const Hamiltonian& h);

  const Hamiltonian& hamiltonian() const { return *h_; }
  const MeasurementGrouping& grouping() const { return grouping_; }

  EnergyEstimate estimate(const Ansatz& a, std::span<const double> theta, std::int64_t n_shots,
                          NoiseMode mode, RngStream& rng) const;

  /// Same contract, starting from an already prepared state.
  EnergyEstimate estimate_state(const Statevector& state, std::int64_t n_shots, NoiseMode mode,
                                RngStream& rng) const;

 private:
  const Hamiltonian* h_;
  MeasurementGrouping grouping_;
  std::vector<std::vector<std::uint64_t>> support_masks_;  // per group, per member term
  std::vector<std::vector<double>> member_coeffs_;
};

/// Convenience one-shot form; builds the context on the fly.
EnergyEstimate estimate(const Ansatz& a, const Hamiltonian& h, std::span<const double> theta,
                        std::int64_t n_shots, NoiseMode mode, RngStream& rng);

/// Eq.-style noise floor: sqrt(mean(per-evaluation single-shot variance) / n_shots).
double noise_floor(std::span<const double> trace_variances, std::int64_t n_shots);

}  // namespace vqelab
