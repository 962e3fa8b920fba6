#include "vqelab/trace.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vqelab/errors.hpp"

namespace vqelab {

std::string to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::budget:
      return "budget";
    case TraceStatus::early_stop:
      return "early_stop";
    default:
      return "diverged";
  }
}

std::int64_t OptimizerTrace::total_fes() const {
  std::int64_t n = 0;
  for (const auto& it : iterations) n += static_cast<std::int64_t>(it.points.size());
  return n;
}

std::vector<double> OptimizerTrace::all_variances() const {
  std::vector<double> v;
  for (const auto& it : iterations)
    for (const auto& p : it.points) v.push_back(p.variance);
  return v;
}

std::vector<double> OptimizerTrace::all_values() const {
  std::vector<double> v;
  for (const auto& it : iterations)
    for (const auto& p : it.points) v.push_back(p.value);
  return v;
}

void write_trace_jsonl(const OptimizerTrace& trace, std::ostream& out) {
  nlohmann::json header{{"type", "header"},
                        {"algorithm", trace.algorithm},
                        {"dimension", trace.dimension},
                        {"budget", trace.budget},
                        {"seed", trace.seed},
                        {"n_shots", trace.n_shots},
                        {"noise_mode", trace.noise_mode},
                        {"variance_convention", trace.variance_convention},
                        {"hyperparameters", trace.hyperparameters}};
  out << header.dump() << "\n";
  for (std::size_t k = 0; k < trace.iterations.size(); ++k) {
    const auto& it = trace.iterations[k];
    nlohmann::json values = nlohmann::json::array();
    nlohmann::json variances = nlohmann::json::array();
    nlohmann::json trues = nlohmann::json::array();
    std::vector<double> best_theta;
    double best = std::numeric_limits<double>::infinity();
    bool any_true = false;
    for (const auto& p : it.points) {
      values.push_back(p.value);
      variances.push_back(p.variance);
      if (p.has_true) {
        trues.push_back(p.true_value);
        any_true = true;
      }
      if (p.value < best) {
        best = p.value;
        best_theta = p.theta;
      }
    }
    nlohmann::json line{{"type", "iteration"}, {"index", k},
                        {"values", values},    {"variances", variances},
                        {"best", it.best},     {"mean", it.mean},
                        {"running_best", it.running_best}, {"wall_ms", it.wall_ms},
                        {"best_theta", best_theta}, {"iterate", it.iterate}};
    if (any_true) line["true_values"] = trues;
    out << line.dump() << "\n";
  }
  nlohmann::json footer{{"type", "final"},
                        {"status", to_string(trace.status)},
                        {"stop_reason", trace.stop_reason},
                        {"total_fes", trace.total_fes()}};
  out << footer.dump() << "\n";
}

void write_trace_jsonl(const OptimizerTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write trace file: " + path);
  write_trace_jsonl(trace, out);
  out.flush();
}

OptimizerTrace read_trace_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open trace file: " + path);
  OptimizerTrace trace;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw LoadError("malformed trace line in " + path + ": " + e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "header") {
      trace.algorithm = j.value("algorithm", "");
      trace.dimension = j.value("dimension", 0);
      trace.budget = j.value("budget", std::int64_t{0});
      trace.seed = j.value("seed", std::uint64_t{0});
      trace.n_shots = j.value("n_shots", std::int64_t{1});
      trace.noise_mode = j.value("noise_mode", "exact");
      trace.variance_convention = j.value("variance_convention", "");
      if (j.contains("hyperparameters"))
        trace.hyperparameters = j["hyperparameters"].get<std::map<std::string, double>>();
      have_header = true;
    } else if (type == "iteration") {
      IterationRecord rec;
      const auto& values = j.at("values");
      const auto& variances = j.at("variances");
      const bool has_true = j.contains("true_values");
      const auto best_theta = j.value("best_theta", std::vector<double>{});
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < values.size(); ++i) {
        TracePoint p;
        p.value = values[i].get<double>();
        p.variance = variances[i].get<double>();
        if (has_true) {
          p.true_value = j["true_values"][i].get<double>();
          p.has_true = true;
        }
        best = std::min(best, p.value);
        rec.points.push_back(std::move(p));
      }
      // Only the iteration-best theta is persisted; reattach it.
      for (auto& p : rec.points) {
        if (p.value == best) {
          p.theta = best_theta;
          break;
        }
      }
      rec.best = j.value("best", best);
      rec.mean = j.value("mean", 0.0);
      rec.running_best = j.value("running_best", best);
      rec.wall_ms = j.value("wall_ms", 0.0);
      rec.iterate = j.value("iterate", std::vector<double>{});
      trace.iterations.push_back(std::move(rec));
    } else if (type == "final") {
      const std::string s = j.value("status", "budget");
      trace.status = s == "diverged" ? TraceStatus::diverged
                   : s == "early_stop" ? TraceStatus::early_stop
                                       : TraceStatus::budget;
      trace.stop_reason = j.value("stop_reason", s);
    }
  }
  if (!have_header) throw LoadError("trace file has no header line: " + path);
  return trace;
}

}  // namespace vqelab
