#include "vqelab/gradient.hpp"

namespace vqelab {

std::vector<double> parameter_shift_gradient(const Ansatz& a, const EstimatorContext& ctx,
                                             std::span<const double> theta, std::int64_t n_shots,
                                             NoiseMode mode, RngStream& rng) {
  const int d = a.n_params();
  const bool shift = a.supports_parameter_shift();
  const double h = shift ? 1.5707963267948966 : kGradientFdStep;
  const double denom = shift ? 2.0 : 2.0 * kGradientFdStep;
  std::vector<double> probe(theta.begin(), theta.end());
  std::vector<double> g(d);
  for (int j = 0; j < d; ++j) {
    probe[j] = theta[j] + h;
    const double fp = ctx.estimate(a, probe, n_shots, mode, rng).value;
    probe[j] = theta[j] - h;
    const double fm = ctx.estimate(a, probe, n_shots, mode, rng).value;
    probe[j] = theta[j];
    g[j] = (fp - fm) / denom;
  }
  return g;
}

std::vector<double> parameter_shift_gradient(const Ansatz& a, const Hamiltonian& h,
                                             std::span<const double> theta, std::int64_t n_shots,
                                             NoiseMode mode, RngStream& rng) {
  EstimatorContext ctx(h);
  return parameter_shift_gradient(a, ctx, theta, n_shots, mode, rng);
}

}  // namespace vqelab
