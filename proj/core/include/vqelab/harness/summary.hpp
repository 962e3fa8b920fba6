#pragma once

#include <iosfwd>

#include "vqelab/harness/experiment.hpp"

namespace vqelab {

/// Per-configuration aggregate of run records. Diverged runs are excluded
/// from the FE and error statistics and counted in their own column.
struct SummaryRow {
  std::string config_hash;
  std::string label;
  std::string algorithm;
  int n_runs = 0;
  int n_converged = 0;
  int n_budget = 0;
  int n_diverged = 0;
  double fes_mean = 0.0;  // over runs that reached tolerance
  double fes_median = 0.0;
  double fes_min = 0.0;
  double fes_max = 0.0;
  double raw_error_mean = 0.0;        // |best_raw - e0| over non-diverged runs
  double corrected_error_mean = 0.0;  // |best_corrected - e0|, when present
  bool has_corrected = false;
  double sigma_noise_mean = 0.0;
};

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);
void write_summary_text(const std::vector<SummaryRow>& rows, std::ostream& out);

}  // namespace vqelab
