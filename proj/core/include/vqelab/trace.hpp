#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace vqelab {

/// One function evaluation inside a trace.
struct TracePoint {
  std::vector<double> theta;
  double value = 0.0;
  double variance = 0.0;        // single-shot variance bookkeeping
  double true_value = 0.0;      // exact <H> where available
  bool has_true = false;
};

/// All FEs of one optimizer iteration plus iteration statistics.
struct IterationRecord {
  std::vector<TracePoint> points;
  double best = 0.0;
  double mean = 0.0;
  double running_best = 0.0;      // nonincreasing across iterations
  std::vector<double> iterate;    // the algorithm's current point after the iteration
  double wall_ms = 0.0;
};

enum class TraceStatus { budget, early_stop, diverged };

std::string to_string(TraceStatus s);

/// Complete record of one minimize() run.
struct OptimizerTrace {
  std::string algorithm;
  int dimension = 0;
  std::int64_t budget = 0;
  std::uint64_t seed = 0;
  std::int64_t n_shots = 1;
  std::string noise_mode = "exact";
  std::map<std::string, double> hyperparameters;
  std::string variance_convention = "groupsum_times_ngroups";

  std::vector<IterationRecord> iterations;
  TraceStatus status = TraceStatus::budget;
  std::string stop_reason = "budget";

  std::int64_t total_fes() const;
  std::vector<double> all_variances() const;
  std::vector<double> all_values() const;
};

/// JSON-lines persistence: one header line, one line per iteration, one final
/// line. Values round-trip bit-exactly.
void write_trace_jsonl(const OptimizerTrace& trace, std::ostream& out);
void write_trace_jsonl(const OptimizerTrace& trace, const std::string& path);
OptimizerTrace read_trace_jsonl(const std::string& path);

}  // namespace vqelab
