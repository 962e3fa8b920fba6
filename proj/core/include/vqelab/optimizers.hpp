#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vqelab/objective.hpp"
#include "vqelab/rng.hpp"
#include "vqelab/trace.hpp"

namespace vqelab {

enum class Algorithm {
  gd,
  spsa,
  nelder_mead,
  bfgs_fd,
  cma_es,
  pso,
  de_best1bin,
  ilshade,
  sa_cauchy,
};

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);
std::vector<Algorithm> all_algorithms();
bool is_population_algorithm(Algorithm a);

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::cma_es;
  std::int64_t budget = 10000;
  int population = 0;  // 0 = algorithm default
  std::uint64_t seed = 0;
  /// Name -> value overrides for the algorithm's hyperparameters; unknown
  /// names are rejected. The resolved set is serialized into the trace.
  std::map<std::string, double> params;
};

/// Defaults overlaid with cfg.params; throws on unknown keys.
std::map<std::string, double> resolved_hyperparameters(const OptimizerConfig& cfg, int dimension);

struct MinimizeResult {
  std::vector<double> best_theta;  // point with the lowest observed value
  double best_value = 0.0;
  std::vector<double> final_iterate;  // algorithm's last iterate / incumbent
  OptimizerTrace trace;
};

/// Minimize obj starting at x0 under cfg, spending at most cfg.budget FEs.
/// Deterministic given (cfg, rng, objective stream). Population proposals are
/// clipped to [-2pi, 2pi] per coordinate.
MinimizeResult minimize(ObjectiveHandle& obj, std::span<const double> x0,
                        const OptimizerConfig& cfg, RngStream rng);

inline constexpr double kParamBound = 6.283185307179586;

}  // namespace vqelab
