#include "vqelab/objective.hpp"

namespace vqelab {

ObjectiveHandle make_vqe_objective(std::shared_ptr<const Ansatz> ansatz,
                                   std::shared_ptr<const EstimatorContext> ctx, NoiseMode mode,
                                   std::int64_t n_shots, RngStream stream) {
  const int dim = ansatz->n_params();
  const bool shift = ansatz->supports_parameter_shift();
  ObjectiveHandle obj(
      dim,
      [ansatz = std::move(ansatz), ctx = std::move(ctx), mode, n_shots](
          std::span<const double> theta, RngStream& rng) {
        const EnergyEstimate e = ctx->estimate(*ansatz, theta, n_shots, mode, rng);
        return EvalOutcome{e.value, e.variance_single_shot, e.true_expectation, true};
      },
      stream);
  obj.set_n_shots(mode == NoiseMode::exact ? 1 : n_shots);
  obj.set_noise_mode(to_string(mode));
  obj.set_gradient_method(shift ? GradientMethod::parameter_shift
                                : GradientMethod::central_difference);
  return obj;
}

}  // namespace vqelab
