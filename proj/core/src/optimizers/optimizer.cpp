#include "vqelab/optimizers.hpp"

#include <algorithm>
#include <cmath>

#include "vqelab/errors.hpp"
#include "recorder.hpp"

namespace vqelab {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::gd: return "gd";
    case Algorithm::spsa: return "spsa";
    case Algorithm::nelder_mead: return "nelder_mead";
    case Algorithm::bfgs_fd: return "bfgs_fd";
    case Algorithm::cma_es: return "cma_es";
    case Algorithm::pso: return "pso";
    case Algorithm::de_best1bin: return "de_best1bin";
    case Algorithm::ilshade: return "ilshade";
    case Algorithm::sa_cauchy: return "sa_cauchy";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& s) {
  for (Algorithm a : all_algorithms()) {
    if (to_string(a) == s) return a;
  }
  throw ConfigError("unknown optimizer algorithm: " + s);
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::gd,     Algorithm::spsa,        Algorithm::nelder_mead,
          Algorithm::bfgs_fd, Algorithm::cma_es,      Algorithm::pso,
          Algorithm::de_best1bin, Algorithm::ilshade, Algorithm::sa_cauchy};
}

bool is_population_algorithm(Algorithm a) {
  switch (a) {
    case Algorithm::cma_es:
    case Algorithm::pso:
    case Algorithm::de_best1bin:
    case Algorithm::ilshade:
      return true;
    default:
      return false;
  }
}

std::map<std::string, double> resolved_hyperparameters(const OptimizerConfig& cfg, int dimension) {
  const double d = static_cast<double>(dimension);
  std::map<std::string, double> hp;
  switch (cfg.algorithm) {
    case Algorithm::gd:
      hp = {{"eta", 0.1}, {"fd_step", 1e-3}};
      break;
    case Algorithm::spsa:
      hp = {{"a", 0.15},
            {"c", 0.1},
            {"big_a", std::max(1.0, 0.05 * static_cast<double>(cfg.budget))},
            {"alpha", 0.602},
            {"gamma", 0.101}};
      break;
    case Algorithm::nelder_mead:
      hp = {{"edge", 0.1}, {"alpha", 1.0}, {"gamma", 2.0}, {"rho", 0.5}, {"sigma", 0.5}};
      break;
    case Algorithm::bfgs_fd:
      hp = {{"fd_step", 1e-3}, {"armijo_c1", 1e-4}, {"backtrack", 0.5},
            {"max_linesearch", 30.0}, {"grad_tol", 1e-9}};
      break;
    case Algorithm::cma_es:
      hp = {{"population", 4.0 + std::floor(3.0 * std::log(d))}, {"sigma0", 0.3}};
      break;
    case Algorithm::pso:
      hp = {{"population", 40.0}, {"inertia", 0.729}, {"cognitive", 1.49445},
            {"social", 1.49445}, {"init_lo", 0.0}, {"init_hi", 1.0}};
      break;
    case Algorithm::de_best1bin:
      hp = {{"population", 40.0}, {"f", 0.8}, {"cr", 0.9}, {"init_lo", 0.0}, {"init_hi", 1.0}};
      break;
    case Algorithm::ilshade:
      hp = {{"population", 18.0 * d}, {"memory", 6.0}, {"p_max", 0.2}, {"p_min", 0.1},
            {"init_lo", 0.0}, {"init_hi", 1.0}};
      break;
    case Algorithm::sa_cauchy:
      hp = {{"t0", 0.5}, {"cooling", 0.995}, {"tmin", 1e-9}, {"step_scale", 1.0}};
      break;
  }
  if (cfg.population > 0) {
    if (hp.count("population")) hp["population"] = static_cast<double>(cfg.population);
  }
  for (const auto& [key, value] : cfg.params) {
    auto it = hp.find(key);
    if (it == hp.end())
      throw ConfigError("unknown hyperparameter '" + key + "' for " + to_string(cfg.algorithm));
    it->second = value;
  }
  return hp;
}

MinimizeResult minimize(ObjectiveHandle& obj, std::span<const double> x0,
                        const OptimizerConfig& cfg, RngStream rng) {
  if (static_cast<int>(x0.size()) != obj.dimension())
    throw ConfigError("x0 length does not match objective dimension");
  if (cfg.budget < 1) throw ConfigError("budget must be >= 1");
  const auto hp = resolved_hyperparameters(cfg, obj.dimension());
  if (is_population_algorithm(cfg.algorithm) && hp.at("population") < 4.0)
    throw ConfigError("population methods need population >= 4");

  MinimizeResult result;
  OptimizerTrace& trace = result.trace;
  trace.algorithm = to_string(cfg.algorithm);
  trace.dimension = obj.dimension();
  trace.budget = cfg.budget;
  trace.seed = cfg.seed;
  trace.n_shots = obj.n_shots();
  trace.noise_mode = obj.noise_mode();
  trace.hyperparameters = hp;

  detail::EvalRecorder rec(obj, trace);
  std::vector<double> final_iterate(x0.begin(), x0.end());
  detail::AlgoArgs args{rec, obj, std::vector<double>(x0.begin(), x0.end()), hp, rng,
                        &final_iterate};
  try {
    switch (cfg.algorithm) {
      case Algorithm::gd: detail::run_gd(std::move(args)); break;
      case Algorithm::spsa: detail::run_spsa(std::move(args)); break;
      case Algorithm::nelder_mead: detail::run_nelder_mead(std::move(args)); break;
      case Algorithm::bfgs_fd: detail::run_bfgs(std::move(args)); break;
      case Algorithm::cma_es: detail::run_cma_es(std::move(args)); break;
      case Algorithm::pso: detail::run_pso(std::move(args)); break;
      case Algorithm::de_best1bin: detail::run_de_best1bin(std::move(args)); break;
      case Algorithm::ilshade: detail::run_ilshade(std::move(args)); break;
      case Algorithm::sa_cauchy: detail::run_sa_cauchy(std::move(args)); break;
    }
  } catch (const detail::DivergenceAbort&) {
    rec.finalize_open_iteration();
    trace.status = TraceStatus::diverged;
    trace.stop_reason = "diverged";
  }

  result.best_theta = rec.has_best() ? rec.best_theta() : std::vector<double>(x0.begin(), x0.end());
  result.best_value = rec.has_best() ? rec.best_value() : std::numeric_limits<double>::quiet_NaN();
  result.final_iterate = final_iterate;
  return result;
}

namespace detail {

std::vector<double> recorded_gradient(EvalRecorder& rec, ObjectiveHandle& obj,
                                      std::span<const double> x, double fd_step) {
  const int d = static_cast<int>(x.size());
  std::vector<double> g(d, 0.0);
  std::vector<double> probe(x.begin(), x.end());
  const bool shift = obj.gradient_method() == GradientMethod::parameter_shift;
  const double h = shift ? 1.5707963267948966 : fd_step;
  const double denom = shift ? 2.0 : 2.0 * fd_step;
  for (int j = 0; j < d; ++j) {
    probe[j] = x[j] + h;
    const double fp = rec.eval(probe);
    probe[j] = x[j] - h;
    const double fm = rec.eval(probe);
    probe[j] = x[j];
    g[j] = (fp - fm) / denom;
  }
  return g;
}

}  // namespace detail

}  // namespace vqelab
