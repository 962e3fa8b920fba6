#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "vqelab/ansatz.hpp"
#include "vqelab/estimator.hpp"
#include "vqelab/trace.hpp"

namespace vqelab {

/// Extreme-value bias of the minimum of K noisy draws: -sigma * sqrt(2 ln K).
double predicted_winner_bias(double sigma_noise, std::int64_t k);

/// A decrease counts as significant only beyond four noise standard deviations.
bool significant_improvement(double decrease, double sigma_noise);

/// Winner's-curse summary of one trace.
struct BiasReport {
  std::int64_t k = 0;              // total FEs
  double sigma_noise = 0.0;        // sqrt(mean variance / n_shots)
  double predicted_bias = 0.0;     // -sigma * sqrt(2 ln K), <= 0
  double observed_min_gap = 0.0;   // min noisy value minus exact value at that theta
  bool has_observed_gap = false;   // requires true values in the trace
  double significance_threshold = 0.0;  // 4 * sigma_noise
};

BiasReport bias_report(const OptimizerTrace& trace);

/// Tracking errors of the mean-of-iteration and best-of-iteration series over
/// the converged phase (final fraction of the iterations).
struct TrackingErrors {
  std::optional<double> mean_error;  // absent when iterations carry single FEs
  double best_error = 0.0;
  double sigma_noise = 0.0;
};

TrackingErrors tracking_errors(const OptimizerTrace& trace, double e0,
                               double window_fraction = 0.25);

/// Alternative reading: exact re-evaluation at the iteration-mean parameter
/// vector (requires per-point thetas, i.e. an in-memory trace).
TrackingErrors tracking_errors_reevaluated(
    const OptimizerTrace& trace, const std::function<double(std::span<const double>)>& exact_eval,
    double e0, double window_fraction = 0.25);

/// Re-estimate candidate points at high precision; n_shots_high is ignored in
/// exact mode.
std::vector<std::pair<std::vector<double>, double>> high_shot_reevaluate(
    const std::vector<std::vector<double>>& candidates, const Ansatz& a, const Hamiltonian& h,
    std::int64_t n_shots_high, NoiseMode mode, RngStream& rng);

struct HessianDiagnostics {
  Eigen::MatrixXd hessian;
  double lambda_max = 0.0;  // L, the gradient Lipschitz constant
  double lambda_min = 0.0;  // mu
  std::optional<double> condition_number;  // L / mu, only when mu > 1e-10
  double eta_max = 0.0;                    // 2 / L (inf when L <= 0)
  bool noise_dominated = false;            // rms gradient noise >= ||H (theta - theta*)||
  double gradient_noise_rms = 0.0;
  double curvature_signal = 0.0;
};

/// Central-difference Hessian (step 1e-3), eigen-extremes, the 2/L step bound,
/// and the noise-dominance check against theta_star (the best known point; the
/// result is an estimate, not a statement about the true optimum). Noisy modes
/// average each entry over 16 repeats.
HessianDiagnostics hessian_diagnostics(const Ansatz& a, const Hamiltonian& h,
                                       std::span<const double> theta, NoiseMode mode,
                                       std::int64_t n_shots, RngStream& rng,
                                       std::span<const double> theta_star);

/// Two-axis slice of the (noisy) landscape around a center point.
struct LandscapeGrid {
  int axis_i = 0;
  int axis_j = 1;
  std::vector<double> axis_i_values;  // absolute parameter values along axis i
  std::vector<double> axis_j_values;
  Eigen::MatrixXd values;             // rows follow axis i, columns axis j
};

LandscapeGrid landscape_scan(const Ansatz& a, const Hamiltonian& h, int axis_i, int axis_j,
                             std::span<const double> center, double half_range, int grid_n,
                             NoiseMode mode, std::int64_t n_shots, RngStream& rng);

/// Plain-text matrix with commented axis headers (gnuplot/CSV friendly).
void write_landscape(const LandscapeGrid& grid, std::ostream& out);

}  // namespace vqelab
