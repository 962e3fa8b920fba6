#include "vqelab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "vqelab/errors.hpp"

namespace vqelab {

double predicted_winner_bias(double sigma_noise, std::int64_t k) {
  if (k < 1) throw ConfigError("winner bias needs K >= 1");
  if (sigma_noise < 0.0) throw ConfigError("sigma_noise must be nonnegative");
  return -sigma_noise * std::sqrt(2.0 * std::log(static_cast<double>(k)));
}

bool significant_improvement(double decrease, double sigma_noise) {
  return decrease > 4.0 * sigma_noise;
}

BiasReport bias_report(const OptimizerTrace& trace) {
  BiasReport report;
  const std::vector<double> vars = trace.all_variances();
  if (vars.empty()) throw ConfigError("trace has no evaluations");
  report.k = static_cast<std::int64_t>(vars.size());
  report.sigma_noise = noise_floor(vars, std::max<std::int64_t>(trace.n_shots, 1));
  report.predicted_bias = predicted_winner_bias(report.sigma_noise, report.k);
  report.significance_threshold = 4.0 * report.sigma_noise;

  double best = std::numeric_limits<double>::infinity();
  for (const auto& it : trace.iterations) {
    for (const auto& p : it.points) {
      if (p.value < best) {
        best = p.value;
        if (p.has_true) {
          report.observed_min_gap = p.value - p.true_value;
          report.has_observed_gap = true;
        } else {
          report.has_observed_gap = false;
        }
      }
    }
  }
  return report;
}

namespace {

std::size_t window_start(std::size_t n_iterations, double window_fraction) {
  const auto keep = static_cast<std::size_t>(
      std::ceil(window_fraction * static_cast<double>(n_iterations)));
  return n_iterations - std::max<std::size_t>(1, std::min(keep, n_iterations));
}

}  // namespace

TrackingErrors tracking_errors(const OptimizerTrace& trace, double e0, double window_fraction) {
  if (trace.iterations.empty()) throw ConfigError("trace has no iterations");
  TrackingErrors out;
  const std::size_t start = window_start(trace.iterations.size(), window_fraction);
  double mean_acc = 0.0, best_acc = 0.0;
  std::size_t mean_count = 0, best_count = 0;
  for (std::size_t i = start; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    if (it.points.empty()) continue;
    best_acc += std::abs(it.best - e0);
    ++best_count;
    if (it.points.size() >= 2) {
      mean_acc += std::abs(it.mean - e0);
      ++mean_count;
    }
  }
  if (best_count == 0) throw ConfigError("trace window has no evaluations");
  out.best_error = best_acc / static_cast<double>(best_count);
  if (mean_count > 0) out.mean_error = mean_acc / static_cast<double>(mean_count);
  const std::vector<double> vars = trace.all_variances();
  out.sigma_noise = noise_floor(vars, std::max<std::int64_t>(trace.n_shots, 1));
  return out;
}

TrackingErrors tracking_errors_reevaluated(
    const OptimizerTrace& trace, const std::function<double(std::span<const double>)>& exact_eval,
    double e0, double window_fraction) {
  if (trace.iterations.empty()) throw ConfigError("trace has no iterations");
  TrackingErrors out;
  const std::size_t start = window_start(trace.iterations.size(), window_fraction);
  double mean_acc = 0.0, best_acc = 0.0;
  std::size_t mean_count = 0, best_count = 0;
  for (std::size_t i = start; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    if (it.points.empty() || it.points.front().theta.empty()) continue;
    const std::size_t d = it.points.front().theta.size();
    std::vector<double> mean_theta(d, 0.0);
    double best_value = std::numeric_limits<double>::infinity();
    const TracePoint* best_point = nullptr;
    for (const auto& p : it.points) {
      for (std::size_t j = 0; j < d; ++j) mean_theta[j] += p.theta[j];
      if (p.value < best_value) {
        best_value = p.value;
        best_point = &p;
      }
    }
    for (double& v : mean_theta) v /= static_cast<double>(it.points.size());
    best_acc += std::abs(exact_eval(best_point->theta) - e0);
    ++best_count;
    if (it.points.size() >= 2) {
      mean_acc += std::abs(exact_eval(mean_theta) - e0);
      ++mean_count;
    }
  }
  if (best_count == 0) throw ConfigError("trace window has no re-evaluable points");
  out.best_error = best_acc / static_cast<double>(best_count);
  if (mean_count > 0) out.mean_error = mean_acc / static_cast<double>(mean_count);
  const std::vector<double> vars = trace.all_variances();
  out.sigma_noise = noise_floor(vars, std::max<std::int64_t>(trace.n_shots, 1));
  return out;
}

std::vector<std::pair<std::vector<double>, double>> high_shot_reevaluate(
    const std::vector<std::vector<double>>& candidates, const Ansatz& a, const Hamiltonian& h,
    std::int64_t n_shots_high, NoiseMode mode, RngStream& rng) {
  EstimatorContext ctx(h);
  std::vector<std::pair<std::vector<double>, double>> out;
  out.reserve(candidates.size());
  for (const auto& theta : candidates) {
    const EnergyEstimate e = ctx.estimate(a, theta, n_shots_high, mode, rng);
    out.emplace_back(theta, e.value);
  }
  return out;
}

HessianDiagnostics hessian_diagnostics(const Ansatz& a, const Hamiltonian& h,
                                       std::span<const double> theta, NoiseMode mode,
                                       std::int64_t n_shots, RngStream& rng,
                                       std::span<const double> theta_star) {
  const int d = a.n_params();
  if (d > 64) throw CapabilityError("hessian diagnostics limited to 64 parameters");
  if (static_cast<int>(theta.size()) != d)
    throw ConfigError("theta length does not match ansatz n_params");
  const double step = 1e-3;
  const int repeats = mode == NoiseMode::exact ? 1 : 16;
  EstimatorContext ctx(h);

  double mean_variance = 0.0;
  std::int64_t n_evals = 0;
  auto f = [&](std::span<const double> point) {
    double acc = 0.0;
    for (int r = 0; r < repeats; ++r) {
      const EnergyEstimate e = ctx.estimate(a, point, n_shots, mode, rng);
      acc += e.value;
      mean_variance += e.variance_single_shot;
      ++n_evals;
    }
    return acc / static_cast<double>(repeats);
  };

  std::vector<double> probe(theta.begin(), theta.end());
  HessianDiagnostics out;
  out.hessian = Eigen::MatrixXd::Zero(d, d);
  const double f0 = f(probe);
  for (int i = 0; i < d; ++i) {
    probe[i] = theta[i] + step;
    const double fp = f(probe);
    probe[i] = theta[i] - step;
    const double fm = f(probe);
    probe[i] = theta[i];
    out.hessian(i, i) = (fp - 2.0 * f0 + fm) / (step * step);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      probe[i] = theta[i] + step;
      probe[j] = theta[j] + step;
      const double fpp = f(probe);
      probe[j] = theta[j] - step;
      const double fpm = f(probe);
      probe[i] = theta[i] - step;
      probe[j] = theta[j] + step;
      const double fmp = f(probe);
      probe[j] = theta[j] - step;
      const double fmm = f(probe);
      probe[i] = theta[i];
      probe[j] = theta[j];
      out.hessian(i, j) = out.hessian(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * step * step);
    }
  }
  if (!out.hessian.allFinite()) throw ConfigError("hessian has non-finite entries");
  out.hessian = (0.5 * (out.hessian + out.hessian.transpose())).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.hessian);
  out.lambda_max = eig.eigenvalues().maxCoeff();
  out.lambda_min = eig.eigenvalues().minCoeff();
  if (out.lambda_min > 1e-10) out.condition_number = out.lambda_max / out.lambda_min;
  out.eta_max = out.lambda_max > 0.0 ? 2.0 / out.lambda_max
                                     : std::numeric_limits<double>::infinity();

  // Gradient-noise rms from the logged single-shot variances, propagated
  // through the gradient estimator the ansatz would use.
  mean_variance /= static_cast<double>(std::max<std::int64_t>(n_evals, 1));
  const double var_fe =
      mode == NoiseMode::exact ? 0.0 : mean_variance / static_cast<double>(std::max<std::int64_t>(n_shots, 1));
  const bool shift = a.supports_parameter_shift();
  const double denom = shift ? 2.0 : 2.0 * 1e-3;
  const double grad_var_per_component = 2.0 * var_fe / (denom * denom);
  out.gradient_noise_rms = std::sqrt(static_cast<double>(d) * grad_var_per_component);

  Eigen::VectorXd displacement(d);
  for (int i = 0; i < d; ++i) displacement(i) = theta[i] - theta_star[i];
  out.curvature_signal = (out.hessian * displacement).norm();
  out.noise_dominated = out.gradient_noise_rms >= out.curvature_signal;
  return out;
}

LandscapeGrid landscape_scan(const Ansatz& a, const Hamiltonian& h, int axis_i, int axis_j,
                             std::span<const double> center, double half_range, int grid_n,
                             NoiseMode mode, std::int64_t n_shots, RngStream& rng) {
  if (grid_n < 2 || grid_n > 512) throw ConfigError("grid_n must be in [2, 512]");
  if (axis_i == axis_j) throw ConfigError("scan axes must differ");
  if (axis_i < 0 || axis_j < 0 || axis_i >= a.n_params() || axis_j >= a.n_params())
    throw ConfigError("scan axis out of range");
  EstimatorContext ctx(h);
  LandscapeGrid grid;
  grid.axis_i = axis_i;
  grid.axis_j = axis_j;
  grid.values = Eigen::MatrixXd::Zero(grid_n, grid_n);
  grid.axis_i_values.resize(grid_n);
  grid.axis_j_values.resize(grid_n);
  for (int k = 0; k < grid_n; ++k) {
    const double offset = -half_range + 2.0 * half_range * k / (grid_n - 1);
    grid.axis_i_values[k] = center[axis_i] + offset;
    grid.axis_j_values[k] = center[axis_j] + offset;
  }
  std::vector<double> point(center.begin(), center.end());
  for (int r = 0; r < grid_n; ++r) {
    point[axis_i] = grid.axis_i_values[r];
    for (int c = 0; c < grid_n; ++c) {
      point[axis_j] = grid.axis_j_values[c];
      RngStream cell_rng = rng.derive(static_cast<std::uint64_t>(r) * grid_n + c);
      grid.values(r, c) = ctx.estimate(a, point, n_shots, mode, cell_rng).value;
    }
  }
  return grid;
}

void write_landscape(const LandscapeGrid& grid, std::ostream& out) {
  out << "# landscape scan: rows follow axis_i, columns follow axis_j\n";
  out << "# axis_i " << grid.axis_i << ":";
  for (double v : grid.axis_i_values) out << " " << v;
  out << "\n# axis_j " << grid.axis_j << ":";
  for (double v : grid.axis_j_values) out << " " << v;
  out << "\n";
  for (Eigen::Index r = 0; r < grid.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < grid.values.cols(); ++c) {
      if (c) out << " ";
      out << grid.values(r, c);
    }
    out << "\n";
  }
}

}  // namespace vqelab
