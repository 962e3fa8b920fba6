#include "vqelab/harness/experiment.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "vqelab/analysis.hpp"
#include "vqelab/errors.hpp"
#include "vqelab/exact.hpp"
#include "vqelab/objective.hpp"

namespace vqelab {

namespace {

constexpr std::uint64_t kInitTag = 1;
constexpr std::uint64_t kOptTag = 2;
constexpr std::uint64_t kEvalTag = 3;
constexpr std::uint64_t kReevalTag = 4;

struct SharedSetup {
  std::shared_ptr<const Hamiltonian> hamiltonian;
  std::shared_ptr<const EstimatorContext> context;
  std::shared_ptr<const Ansatz> ansatz;
  double e0 = 0.0;
};

SharedSetup prepare(const ExperimentConfig& cfg) {
  SharedSetup s;
  s.hamiltonian = std::make_shared<const Hamiltonian>(build_hamiltonian(cfg.hamiltonian));
  s.context = std::make_shared<const EstimatorContext>(*s.hamiltonian);
  s.ansatz = build_ansatz(cfg.ansatz, *s.hamiltonian);
  s.e0 = exact_ground_energy(*s.hamiltonian).energy;
  return s;
}

RunOutput execute_run(const ExperimentConfig& cfg, const SharedSetup& setup, int run_index) {
  const auto t_start = std::chrono::steady_clock::now();
  const std::uint64_t run_seed = cfg.run.seed + static_cast<std::uint64_t>(run_index);
  RngStream root(run_seed);
  const NoiseMode mode = noise_mode_from_string(cfg.noise.mode);
  const int dim = setup.ansatz->n_params();

  std::vector<double> x0(dim, 0.0);
  if (cfg.run.init == "uniform01") {
    RngStream init_rng = root.derive(kInitTag);
    for (double& v : x0) v = init_rng.next_double();
  } else if (cfg.run.init == "custom") {
    if (static_cast<int>(cfg.run.init_values.size()) != dim)
      throw ConfigError("init_values length " + std::to_string(cfg.run.init_values.size()) +
                        " does not match ansatz n_params " + std::to_string(dim));
    x0 = cfg.run.init_values;
  }

  ObjectiveHandle objective =
      make_vqe_objective(setup.ansatz, setup.context, mode, cfg.noise.shots, root.derive(kEvalTag));
  objective.set_divergence_threshold(1e3 * std::max(1.0, std::abs(setup.e0)));

  OptimizerConfig opt_cfg = cfg.optimizer;
  opt_cfg.seed = run_seed;
  MinimizeResult result = minimize(objective, x0, opt_cfg, root.derive(kOptTag));

  RunOutput out;
  out.record.config_hash = cfg.hash();
  out.record.label = cfg.label();
  out.record.algorithm = to_string(cfg.optimizer.algorithm);
  out.record.run_index = run_index;
  out.record.seed = run_seed;
  out.record.e0 = setup.e0;
  out.record.best_raw = result.best_value;
  out.record.best_theta = result.best_theta;
  out.record.fes = result.trace.total_fes();

  // First FE whose exact energy is inside the tolerance band around E0.
  std::int64_t fe_index = 0;
  for (const auto& it : result.trace.iterations) {
    for (const auto& p : it.points) {
      ++fe_index;
      if (p.has_true && std::abs(p.true_value - setup.e0) <= cfg.run.tolerance) {
        out.record.reached_tolerance = true;
        out.record.fes_to_tolerance = fe_index;
        break;
      }
    }
    if (out.record.reached_tolerance) break;
  }

  out.record.sigma_noise =
      mode == NoiseMode::exact
          ? 0.0
          : noise_floor(result.trace.all_variances(), std::max<std::int64_t>(cfg.noise.shots, 1));

  if (cfg.reevaluation.enabled && !result.trace.iterations.empty()) {
    // Elites: the final iteration's points plus the global noisy best.
    std::vector<std::vector<double>> candidates;
    std::set<std::vector<double>> seen;
    auto add = [&](const std::vector<double>& theta) {
      if (!theta.empty() && seen.insert(theta).second && candidates.size() < 16)
        candidates.push_back(theta);
    };
    add(result.best_theta);
    add(result.final_iterate);
    const auto& last = result.trace.iterations.back();
    std::vector<const TracePoint*> points;
    for (const auto& p : last.points) points.push_back(&p);
    std::sort(points.begin(), points.end(),
              [](const TracePoint* a, const TracePoint* b) { return a->value < b->value; });
    for (const TracePoint* p : points) add(p->theta);

    RngStream reeval_rng = root.derive(kReevalTag);
    const NoiseMode reeval_mode = noise_mode_from_string(cfg.reevaluation.mode);
    const auto corrected = high_shot_reevaluate(candidates, *setup.ansatz, *setup.hamiltonian,
                                                cfg.reevaluation.shots, reeval_mode, reeval_rng);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [theta, value] : corrected) best = std::min(best, value);
    out.record.has_corrected = true;
    out.record.best_corrected = best;
  }

  if (result.trace.status == TraceStatus::diverged)
    out.record.status = "diverged";
  else if (out.record.reached_tolerance)
    out.record.status = "converged";
  else
    out.record.status = "budget";
  out.record.stop_reason = result.trace.stop_reason;
  out.record.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
          .count();

  out.trace = std::move(result.trace);
  out.result.best_theta = result.best_theta;
  out.result.best_value = result.best_value;
  out.result.final_iterate = result.final_iterate;
  return out;
}

nlohmann::json record_to_json(const RunRecord& r) {
  nlohmann::json j{
      {"config_hash", r.config_hash},
      {"label", r.label},
      {"algorithm", r.algorithm},
      {"run_index", r.run_index},
      {"seed", r.seed},
      {"e0", r.e0},
      {"best_raw", r.best_raw},
      {"best_theta", r.best_theta},
      {"fes", r.fes},
      {"reached_tolerance", r.reached_tolerance},
      {"fes_to_tolerance", r.fes_to_tolerance},
      {"sigma_noise", r.sigma_noise},
      {"wall_ms", r.wall_ms},
      {"status", r.status},
      {"stop_reason", r.stop_reason},
      {"trace_path", r.trace_path},
  };
  if (r.has_corrected) j["best_corrected"] = r.best_corrected;
  return j;
}

RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.config_hash = j.value("config_hash", "");
  r.label = j.value("label", "");
  r.algorithm = j.value("algorithm", "");
  r.run_index = j.value("run_index", 0);
  r.seed = j.value("seed", std::uint64_t{0});
  r.e0 = j.value("e0", 0.0);
  r.best_raw = j.value("best_raw", 0.0);
  r.best_theta = j.value("best_theta", std::vector<double>{});
  r.fes = j.value("fes", std::int64_t{0});
  r.reached_tolerance = j.value("reached_tolerance", false);
  r.fes_to_tolerance = j.value("fes_to_tolerance", std::int64_t{-1});
  r.sigma_noise = j.value("sigma_noise", 0.0);
  r.wall_ms = j.value("wall_ms", 0.0);
  r.status = j.value("status", "budget");
  r.stop_reason = j.value("stop_reason", "");
  r.trace_path = j.value("trace_path", "");
  if (j.contains("best_corrected")) {
    r.has_corrected = true;
    r.best_corrected = j["best_corrected"].get<double>();
  }
  return r;
}

}  // namespace

void append_record(const RunRecord& record, std::ostream& out) {
  out << record_to_json(record).dump() << "\n";
  out.flush();
}

std::vector<RunRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open records file: " + path);
  std::vector<RunRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) continue;  // tolerate a truncated in-flight line
    records.push_back(record_from_json(j));
  }
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.run_index < b.run_index; });
  return records;
}

std::vector<RunOutput> run_experiment_in_memory(const ExperimentConfig& cfg) {
  cfg.validate();
  const SharedSetup setup = prepare(cfg);
  std::vector<RunOutput> outputs;
  outputs.reserve(cfg.run.n_runs);
  for (int i = 0; i < cfg.run.n_runs; ++i) outputs.push_back(execute_run(cfg, setup, i));
  return outputs;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                                      int threads) {
  cfg.validate();
  const SharedSetup setup = prepare(cfg);
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(out_dir) / (cfg.name + "-" + cfg.hash().substr(0, 8));
  fs::create_directories(dir);
  {
    std::ofstream cfg_out(dir / "config.txt");
    cfg_out << cfg.canonical_text();
  }

  std::ofstream records_out(dir / "records.jsonl", std::ios::app);
  if (!records_out) throw LoadError("cannot open records file for append");

  std::vector<RunRecord> records(cfg.run.n_runs);
  std::mutex writer_mutex;
  std::atomic<int> next{0};
  const int n_workers = std::max(1, std::min(threads, cfg.run.n_runs));

  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= cfg.run.n_runs) return;
      RunOutput out = execute_run(cfg, setup, i);
      const fs::path trace_path = dir / ("run_" + std::to_string(i) + ".trace.jsonl");
      out.record.trace_path = trace_path.string();
      write_trace_jsonl(out.trace, trace_path.string());
      {
        std::lock_guard<std::mutex> lock(writer_mutex);
        append_record(out.record, records_out);
        records[i] = out.record;
      }
    }
  };

  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

}  // namespace vqelab
