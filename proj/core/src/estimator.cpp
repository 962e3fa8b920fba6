#include "vqelab/estimator.hpp"

#include <bit>
#include <cmath>

#include "vqelab/errors.hpp"

namespace vqelab {

std::string to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::exact:
      return "exact";
    case NoiseMode::gaussian:
      return "gaussian";
    default:
      return "sampled";
  }
}

NoiseMode noise_mode_from_string(const std::string& s) {
  if (s == "exact") return NoiseMode::exact;
  if (s == "gaussian") return NoiseMode::gaussian;
  if (s == "sampled") return NoiseMode::sampled;
  throw ConfigError("unknown noise mode: " + s);
}

double EnergyEstimate::sigma() const {
  if (mode == NoiseMode::exact || n_shots <= 0) return 0.0;
  return std::sqrt(variance_single_shot / static_cast<double>(n_shots));
}

EstimatorContext::EstimatorContext(const Hamiltonian& h) : h_(&h), grouping_(build_grouping(h)) {
  for (const auto& group : grouping_.groups) {
    std::vector<std::uint64_t> masks;
    std::vector<double> coeffs;
    for (int idx : group) {
      const auto& m = h.masked_terms()[idx];
      masks.push_back(m.flip_mask | m.phase_mask);  // non-identity support
      coeffs.push_back(m.coefficient);
    }
    support_masks_.push_back(std::move(masks));
    member_coeffs_.push_back(std::move(coeffs));
  }
}

EnergyEstimate EstimatorContext::estimate_state(const Statevector& state, std::int64_t n_shots,
                                                NoiseMode mode, RngStream& rng) const {
  const Hamiltonian& h = *h_;
  if (state.n_qubits() != h.n_qubits())
    throw ConfigError("state dimension does not match Hamiltonian qubit count");
  if (mode != NoiseMode::exact && n_shots < 1)
    throw ConfigError("noisy estimation needs n_shots >= 1");

  EnergyEstimate out;
  out.mode = mode;
  out.n_shots = mode == NoiseMode::exact ? 0 : n_shots;
  out.true_expectation = expectation(state, h);

  if (mode == NoiseMode::exact || mode == NoiseMode::gaussian) {
    out.variance_single_shot = variance(state, h);
    if (mode == NoiseMode::exact) {
      out.value = out.true_expectation;
    } else {
      const double sigma = std::sqrt(out.variance_single_shot / static_cast<double>(n_shots));
      out.value = out.true_expectation + sigma * rng.next_normal();
    }
    return out;
  }

  // Sampled mode: split shots across commuting groups, remainder to the
  // earliest groups, and measure each group in its rotated Z basis.
  const std::int64_t n_groups = static_cast<std::int64_t>(grouping_.n_groups());
  if (n_groups == 0) {
    out.value = h.identity_offset();
    out.variance_single_shot = 0.0;
    return out;
  }
  if (n_shots < n_groups)
    throw ConfigError("sampled mode needs n_shots >= number of measurement groups (" +
                      std::to_string(n_groups) + ")");
  const std::int64_t base = n_shots / n_groups;
  const std::int64_t rem = n_shots % n_groups;

  double value = h.identity_offset();
  double sum_group_var = 0.0;
  for (std::int64_t g = 0; g < n_groups; ++g) {
    Statevector rotated = state;
    for (const auto& gate : grouping_.basis_changes[g]) apply_gate(rotated, gate, gate.angle);
    const std::vector<double> cum = rotated.cumulative_probabilities();

    const auto& masks = support_masks_[g];
    const auto& coeffs = member_coeffs_[g];

    // Exact per-shot variance of the group observable in the rotated state.
    double ev = 0.0, ev2 = 0.0;
    for (std::uint64_t z = 0; z < rotated.dim(); ++z) {
      const double pz = std::norm(rotated[z]);
      if (pz == 0.0) continue;
      double v = 0.0;
      for (std::size_t k = 0; k < masks.size(); ++k) {
        v += (std::popcount(z & masks[k]) & 1) ? -coeffs[k] : coeffs[k];
      }
      ev += pz * v;
      ev2 += pz * v * v;
    }
    sum_group_var += std::max(0.0, ev2 - ev * ev);

    const std::int64_t shots_g = base + (g < rem ? 1 : 0);
    double acc = 0.0;
    for (std::int64_t s = 0; s < shots_g; ++s) {
      const std::uint64_t z = Statevector::sample_index(cum, rng);
      double v = 0.0;
      for (std::size_t k = 0; k < masks.size(); ++k) {
        v += (std::popcount(z & masks[k]) & 1) ? -coeffs[k] : coeffs[k];
      }
      acc += v;
    }
    value += acc / static_cast<double>(shots_g);
  }
  out.value = value;
  out.variance_single_shot = static_cast<double>(n_groups) * sum_group_var;
  return out;
}

EnergyEstimate EstimatorContext::estimate(const Ansatz& a, std::span<const double> theta,
                                          std::int64_t n_shots, NoiseMode mode,
                                          RngStream& rng) const {
  const Statevector state = a.prepare(theta);
  return estimate_state(state, n_shots, mode, rng);
}

EnergyEstimate estimate(const Ansatz& a, const Hamiltonian& h, std::span<const double> theta,
                        std::int64_t n_shots, NoiseMode mode, RngStream& rng) {
  EstimatorContext ctx(h);
  return ctx.estimate(a, theta, n_shots, mode, rng);
}

double noise_floor(std::span<const double> trace_variances, std::int64_t n_shots) {
  if (trace_variances.empty()) throw ConfigError("noise_floor needs at least one variance");
  if (n_shots < 1) throw ConfigError("noise_floor needs n_shots >= 1");
  double mean = 0.0;
  for (double v : trace_variances) mean += v;
  mean /= static_cast<double>(trace_variances.size());
  return std::sqrt(mean / static_cast<double>(n_shots));
}

}  // namespace vqelab
