#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "vqelab/ansatz.hpp"
#include "vqelab/estimator.hpp"
#include "vqelab/rng.hpp"

namespace vqelab {

/// One objective evaluation with its variance bookkeeping.
struct EvalOutcome {
  double value = 0.0;
  double variance_single_shot = 0.0;
  double true_expectation = 0.0;
  bool has_true = false;
};

enum class GradientMethod { parameter_shift, central_difference };

/// Counted access to a noisy objective. Every evaluate() call consumes one FE,
/// derives its own rng stream from the evaluation index, and appends to the
/// variance log.
class ObjectiveHandle {
 public:
  using EvalFn = std::function<EvalOutcome(std::span<const double>, RngStream&)>;

  ObjectiveHandle(int dimension, EvalFn fn, RngStream stream)
      : dim_(dimension), fn_(std::move(fn)), base_(stream) {}

  int dimension() const { return dim_; }

  EvalOutcome evaluate(std::span<const double> theta) {
    RngStream eval_rng = base_.derive(static_cast<std::uint64_t>(count_));
    ++count_;
    EvalOutcome out = fn_(theta, eval_rng);
    variances_.push_back(out.variance_single_shot);
    return out;
  }

  std::int64_t evaluations() const { return count_; }
  const std::vector<double>& variance_log() const { return variances_; }

  std::int64_t n_shots() const { return n_shots_; }
  void set_n_shots(std::int64_t n) { n_shots_ = n; }

  GradientMethod gradient_method() const { return gradient_method_; }
  void set_gradient_method(GradientMethod m) { gradient_method_ = m; }

  const std::string& noise_mode() const { return noise_mode_; }
  void set_noise_mode(std::string mode) { noise_mode_ = std::move(mode); }

  /// Values with magnitude above this abort the run as diverged.
  double divergence_threshold() const { return divergence_threshold_; }
  void set_divergence_threshold(double t) { divergence_threshold_ = t; }

 private:
  int dim_;
  EvalFn fn_;
  RngStream base_;
  std::int64_t count_ = 0;
  std::int64_t n_shots_ = 1;
  GradientMethod gradient_method_ = GradientMethod::central_difference;
  std::string noise_mode_ = "exact";
  double divergence_threshold_ = std::numeric_limits<double>::infinity();
  std::vector<double> variances_;
};

/// VQE objective: estimate the ansatz energy under the given noise mode.
/// The ansatz/Hamiltonian/context are shared, read-only.
ObjectiveHandle make_vqe_objective(std::shared_ptr<const Ansatz> ansatz,
                                   std::shared_ptr<const EstimatorContext> ctx,
                                   NoiseMode mode, std::int64_t n_shots, RngStream stream);

}  // namespace vqelab
