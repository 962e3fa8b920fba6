#pragma once

#include "vqelab/ansatz.hpp"
#include "vqelab/estimator.hpp"

namespace vqelab {

/// Gradient of the (noisy) energy: the pi/2 parameter-shift rule where every
/// gate generator squares to identity after scaling (TwoLocal rotations),
/// central differences with step 1e-3 otherwise. 2 * n_params evaluations.
std::vector<double> parameter_shift_gradient(const Ansatz& a, const Hamiltonian& h,
                                             std::span<const double> theta, std::int64_t n_shots,
                                             NoiseMode mode, RngStream& rng);

std::vector<double> parameter_shift_gradient(const Ansatz& a, const EstimatorContext& ctx,
                                             std::span<const double> theta, std::int64_t n_shots,
                                             NoiseMode mode, RngStream& rng);

inline constexpr double kGradientFdStep = 1e-3;

}  // namespace vqelab
