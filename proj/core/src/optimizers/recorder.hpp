#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "vqelab/objective.hpp"
#include "vqelab/trace.hpp"

namespace vqelab::detail {

/// Thrown when an evaluation breaches the divergence guard; caught by
/// minimize(), which marks the trace diverged.
struct DivergenceAbort {};

/// Routes every FE through the trace: per-point bookkeeping, iteration
/// statistics, running best, wall clock, and the budget counter.
class EvalRecorder {
 public:
  EvalRecorder(ObjectiveHandle& obj, OptimizerTrace& trace) : obj_(obj), trace_(trace) {}

  bool budget_left(std::int64_t n = 1) const { return used_ + n <= trace_.budget; }
  std::int64_t remaining() const { return trace_.budget - used_; }
  std::int64_t used() const { return used_; }

  void begin_iteration() {
    current_ = IterationRecord{};
    in_iteration_ = true;
    iter_start_ = std::chrono::steady_clock::now();
  }

  double eval(std::span<const double> theta) {
    const EvalOutcome out = obj_.evaluate(theta);
    ++used_;
    TracePoint p;
    p.theta.assign(theta.begin(), theta.end());
    p.value = out.value;
    p.variance = out.variance_single_shot;
    p.true_value = out.true_expectation;
    p.has_true = out.has_true;
    current_.points.push_back(std::move(p));
    if (out.value < best_value_) {
      best_value_ = out.value;
      best_theta_.assign(theta.begin(), theta.end());
    }
    if (!std::isfinite(out.value) || std::abs(out.value) > obj_.divergence_threshold())
      throw DivergenceAbort{};
    return out.value;
  }

  void end_iteration(std::span<const double> iterate) {
    if (!in_iteration_) return;
    double best = std::numeric_limits<double>::infinity();
    double mean = 0.0;
    for (const auto& p : current_.points) {
      best = std::min(best, p.value);
      mean += p.value;
    }
    if (!current_.points.empty()) mean /= static_cast<double>(current_.points.size());
    running_best_ = std::min(running_best_, best);
    current_.best = best;
    current_.mean = mean;
    current_.running_best = running_best_;
    current_.iterate.assign(iterate.begin(), iterate.end());
    current_.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - iter_start_)
                           .count();
    if (!current_.points.empty()) trace_.iterations.push_back(std::move(current_));
    in_iteration_ = false;
  }

  /// Close a partially recorded iteration after a divergence abort.
  void finalize_open_iteration() {
    if (in_iteration_) end_iteration(best_theta_);
  }

  void early_stop(const std::string& reason) {
    trace_.status = TraceStatus::early_stop;
    trace_.stop_reason = reason;
  }

  bool has_best() const { return std::isfinite(best_value_); }
  double best_value() const { return best_value_; }
  const std::vector<double>& best_theta() const { return best_theta_; }

 private:
  ObjectiveHandle& obj_;
  OptimizerTrace& trace_;
  IterationRecord current_;
  bool in_iteration_ = false;
  std::chrono::steady_clock::time_point iter_start_{};
  double best_value_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_theta_;
  double running_best_ = std::numeric_limits<double>::infinity();
  std::int64_t used_ = 0;
};

/// Shared declarations for the per-algorithm translation units.
struct AlgoArgs {
  EvalRecorder& rec;
  ObjectiveHandle& obj;
  std::vector<double> x0;
  const std::map<std::string, double>& hp;
  RngStream rng;
  std::vector<double>* final_iterate;
};

void run_gd(AlgoArgs a);
void run_spsa(AlgoArgs a);
void run_nelder_mead(AlgoArgs a);
void run_bfgs(AlgoArgs a);
void run_cma_es(AlgoArgs a);
void run_pso(AlgoArgs a);
void run_de_best1bin(AlgoArgs a);
void run_ilshade(AlgoArgs a);
void run_sa_cauchy(AlgoArgs a);

inline double clip_to_bound(double v, double bound) {
  return v < -bound ? -bound : (v > bound ? bound : v);
}

/// Gradient of the objective at x using its preferred method; consumes
/// 2 * dimension FEs through the recorder.
std::vector<double> recorded_gradient(EvalRecorder& rec, ObjectiveHandle& obj,
                                      std::span<const double> x, double fd_step);

}  // namespace vqelab::detail
