#pragma once

#include <iosfwd>

#include "vqelab/harness/config.hpp"
#include "vqelab/trace.hpp"

namespace vqelab {

/// Outcome of one optimization run, persisted as one JSON line.
struct RunRecord {
  std::string config_hash;
  std::string label;
  std::string algorithm;
  int run_index = 0;
  std::uint64_t seed = 0;
  double e0 = 0.0;

  double best_raw = 0.0;
  std::vector<double> best_theta;
  bool has_corrected = false;
  double best_corrected = 0.0;

  std::int64_t fes = 0;
  bool reached_tolerance = false;
  std::int64_t fes_to_tolerance = -1;  // 1-based FE index; -1 = not reached

  double sigma_noise = 0.0;
  double wall_ms = 0.0;
  std::string status = "budget";  // converged | budget | diverged
  std::string stop_reason = "budget";
  std::string trace_path;
};

/// Run cfg.run.n_runs independent optimizations (run i seeded base + i),
/// persisting each trace and record before the next run completes. Runs are
/// the unit of parallelism; a serialized writer appends records.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                                      int threads = 1);

/// In-memory variant used by tests and analysis flows: no files written,
/// traces returned alongside the records.
struct RunOutput {
  RunRecord record;
  OptimizerTrace trace;
  MinimizeResult result;
};
std::vector<RunOutput> run_experiment_in_memory(const ExperimentConfig& cfg);

void append_record(const RunRecord& record, std::ostream& out);
std::vector<RunRecord> load_records(const std::string& path);

}  // namespace vqelab
