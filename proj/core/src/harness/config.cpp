#include "vqelab/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vqelab/errors.hpp"
#include "vqelab/models.hpp"

namespace vqelab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_quote = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quote = !in_quote;
    if (line[i] == '#' && !in_quote) return line.substr(0, i);
  }
  return line;
}

double parse_number(const std::string& s, const std::string& where) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError(where + ": cannot parse number '" + s + "'");
  return v;
}

ConfigValue parse_value(const std::string& raw, const std::string& where) {
  const std::string v = trim(raw);
  if (v.empty()) throw ConfigError(where + ": empty value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"')
      throw ConfigError(where + ": unterminated string " + v);
    return v.substr(1, v.size() - 2);
  }
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.front() == '[') {
    if (v.back() != ']') throw ConfigError(where + ": unterminated array " + v);
    std::vector<double> values;
    std::string inner = v.substr(1, v.size() - 2);
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      values.push_back(parse_number(item, where));
    }
    return values;
  }
  return parse_number(v, where);
}

const ConfigValue* find(const std::map<std::string, std::map<std::string, ConfigValue>>& sections,
                        const std::string& section, const std::string& key) {
  auto s = sections.find(section);
  if (s == sections.end()) return nullptr;
  auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  return &k->second;
}

double get_number(const std::map<std::string, std::map<std::string, ConfigValue>>& sections,
                  const std::string& section, const std::string& key, double fallback) {
  const ConfigValue* v = find(sections, section, key);
  if (!v) return fallback;
  if (const double* d = std::get_if<double>(v)) return *d;
  throw ConfigError("[" + section + "] " + key + " must be a number");
}

std::string get_string(const std::map<std::string, std::map<std::string, ConfigValue>>& sections,
                       const std::string& section, const std::string& key,
                       const std::string& fallback) {
  const ConfigValue* v = find(sections, section, key);
  if (!v) return fallback;
  if (const std::string* s = std::get_if<std::string>(v)) return *s;
  throw ConfigError("[" + section + "] " + key + " must be a quoted string");
}

bool get_bool(const std::map<std::string, std::map<std::string, ConfigValue>>& sections,
              const std::string& section, const std::string& key, bool fallback) {
  const ConfigValue* v = find(sections, section, key);
  if (!v) return fallback;
  if (const bool* b = std::get_if<bool>(v)) return *b;
  throw ConfigError("[" + section + "] " + key + " must be true or false");
}

void check_known_keys(const std::map<std::string, ConfigValue>& section,
                      const std::string& name, std::initializer_list<const char*> known) {
  for (const auto& [key, _] : section) {
    if (std::find_if(known.begin(), known.end(),
                     [&](const char* k) { return key == k; }) == known.end())
      throw ConfigError("unknown key '" + key + "' in [" + name + "]");
  }
}

}  // namespace

std::map<std::string, std::map<std::string, ConfigValue>> parse_config_text(
    const std::string& text, const std::string& origin) {
  std::map<std::string, std::map<std::string, ConfigValue>> sections;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      if (current.empty()) throw ConfigError(where + ": empty section name");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (current.empty()) throw ConfigError(where + ": key outside any [section]");
    sections[current][key] = parse_value(line.substr(eq + 1), where);
  }
  return sections;
}

std::map<std::string, std::map<std::string, ConfigValue>> parse_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

std::uint64_t occupation_index(const std::string& bits, int n_qubits) {
  if (static_cast<int>(bits.size()) != n_qubits)
    throw ConfigError("occupation bitstring \"" + bits + "\" length != n_qubits " +
                      std::to_string(n_qubits));
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw ConfigError("occupation bitstring must contain only 0/1: " + bits);
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return index;
}

ExperimentConfig experiment_config_from_text(const std::string& text, const std::string& origin) {
  const auto sections = parse_config_text(text, origin);
  for (const auto& [name, _] : sections) {
    if (name != "experiment" && name != "hamiltonian" && name != "ansatz" &&
        name != "optimizer" && name != "noise" && name != "run" && name != "reevaluation")
      throw ConfigError("unknown section [" + name + "] in " + origin);
  }

  ExperimentConfig cfg;
  cfg.name = get_string(sections, "experiment", "name",
                        std::filesystem::path(origin).stem().string());

  if (auto it = sections.find("hamiltonian"); it != sections.end())
    check_known_keys(it->second, "hamiltonian",
                     {"kind", "n_qubits", "n_sites", "t", "u", "boundary", "path"});
  cfg.hamiltonian.kind = get_string(sections, "hamiltonian", "kind", cfg.hamiltonian.kind);
  cfg.hamiltonian.n_qubits =
      static_cast<int>(get_number(sections, "hamiltonian", "n_qubits", cfg.hamiltonian.n_qubits));
  cfg.hamiltonian.n_sites =
      static_cast<int>(get_number(sections, "hamiltonian", "n_sites", cfg.hamiltonian.n_sites));
  cfg.hamiltonian.t = get_number(sections, "hamiltonian", "t", cfg.hamiltonian.t);
  cfg.hamiltonian.u = get_number(sections, "hamiltonian", "u", cfg.hamiltonian.u);
  cfg.hamiltonian.boundary = get_string(sections, "hamiltonian", "boundary", cfg.hamiltonian.boundary);
  cfg.hamiltonian.path = get_string(sections, "hamiltonian", "path", cfg.hamiltonian.path);
  if (cfg.hamiltonian.kind == "file" && !cfg.hamiltonian.path.empty()) {
    // Resolve relative to the config file directory when not found as given.
    const std::filesystem::path p(cfg.hamiltonian.path);
    if (p.is_relative() && !std::filesystem::exists(p)) {
      const std::filesystem::path alt = std::filesystem::path(origin).parent_path() / p;
      if (std::filesystem::exists(alt)) cfg.hamiltonian.path = alt.string();
    }
  }

  if (auto it = sections.find("ansatz"); it != sections.end())
    check_known_keys(it->second, "ansatz",
                     {"family", "reps", "entangler", "entanglement", "layers", "p",
                      "hf_occupation"});
  cfg.ansatz.family = get_string(sections, "ansatz", "family", cfg.ansatz.family);
  cfg.ansatz.reps = static_cast<int>(get_number(sections, "ansatz", "reps", cfg.ansatz.reps));
  cfg.ansatz.entangler = get_string(sections, "ansatz", "entangler", cfg.ansatz.entangler);
  cfg.ansatz.entanglement =
      get_string(sections, "ansatz", "entanglement", cfg.ansatz.entanglement);
  cfg.ansatz.layers = static_cast<int>(get_number(sections, "ansatz", "layers", cfg.ansatz.layers));
  cfg.ansatz.p = get_number(sections, "ansatz", "p", cfg.ansatz.p);
  cfg.ansatz.hf_occupation = get_string(sections, "ansatz", "hf_occupation", cfg.ansatz.hf_occupation);

  cfg.optimizer.algorithm =
      algorithm_from_string(get_string(sections, "optimizer", "algorithm", "cma_es"));
  cfg.optimizer.budget =
      static_cast<std::int64_t>(get_number(sections, "optimizer", "budget", 10000));
  cfg.optimizer.population =
      static_cast<int>(get_number(sections, "optimizer", "population", 0));
  if (auto it = sections.find("optimizer"); it != sections.end()) {
    for (const auto& [key, value] : it->second) {
      if (key == "algorithm" || key == "budget" || key == "population") continue;
      if (const double* d = std::get_if<double>(&value)) {
        cfg.optimizer.params[key] = *d;  // validated by resolved_hyperparameters
      } else {
        throw ConfigError("[optimizer] " + key + " must be numeric");
      }
    }
  }

  if (auto it = sections.find("noise"); it != sections.end())
    check_known_keys(it->second, "noise", {"mode", "shots"});
  cfg.noise.mode = get_string(sections, "noise", "mode", cfg.noise.mode);
  cfg.noise.shots = static_cast<std::int64_t>(get_number(sections, "noise", "shots",
                                                         static_cast<double>(cfg.noise.shots)));

  if (auto it = sections.find("run"); it != sections.end())
    check_known_keys(it->second, "run",
                     {"n_runs", "seed", "init", "init_values", "tolerance"});
  cfg.run.n_runs = static_cast<int>(get_number(sections, "run", "n_runs", cfg.run.n_runs));
  cfg.run.seed = static_cast<std::uint64_t>(get_number(sections, "run", "seed",
                                                       static_cast<double>(cfg.run.seed)));
  cfg.run.init = get_string(sections, "run", "init", cfg.run.init);
  if (const ConfigValue* v = find(sections, "run", "init_values")) {
    if (const auto* arr = std::get_if<std::vector<double>>(v))
      cfg.run.init_values = *arr;
    else
      throw ConfigError("[run] init_values must be an array");
  }
  cfg.run.tolerance = get_number(sections, "run", "tolerance", cfg.run.tolerance);

  if (auto it = sections.find("reevaluation"); it != sections.end())
    check_known_keys(it->second, "reevaluation", {"enabled", "mode", "shots"});
  cfg.reevaluation.enabled = get_bool(sections, "reevaluation", "enabled", cfg.reevaluation.enabled);
  cfg.reevaluation.mode = get_string(sections, "reevaluation", "mode", cfg.reevaluation.mode);
  cfg.reevaluation.shots = static_cast<std::int64_t>(
      get_number(sections, "reevaluation", "shots", static_cast<double>(cfg.reevaluation.shots)));

  cfg.validate();
  return cfg;
}

ExperimentConfig experiment_config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return experiment_config_from_text(buffer.str(), path);
}

void ExperimentConfig::validate() const {
  if (hamiltonian.kind != "ising" && hamiltonian.kind != "hubbard" && hamiltonian.kind != "file")
    throw ConfigError("hamiltonian kind must be ising, hubbard, or file");
  if (hamiltonian.kind == "file") {
    if (hamiltonian.path.empty()) throw ConfigError("hamiltonian kind=file needs a path");
    if (!std::filesystem::exists(hamiltonian.path))
      throw ConfigError("hamiltonian file not found: " + hamiltonian.path);
  }
  if (ansatz.family != "twolocal" && ansatz.family != "tvha")
    throw ConfigError("ansatz family must be twolocal or tvha");
  noise_mode_from_string(noise.mode);
  if (noise.mode != "exact" && noise.shots < 1) throw ConfigError("noisy modes need shots >= 1");
  if (run.n_runs < 1) throw ConfigError("n_runs must be >= 1");
  if (run.init != "uniform01" && run.init != "zeros" && run.init != "custom")
    throw ConfigError("init must be uniform01, zeros, or custom");
  if (run.init == "custom" && run.init_values.empty())
    throw ConfigError("init=custom needs init_values");
  if (run.tolerance <= 0.0) throw ConfigError("tolerance must be positive");
  if (optimizer.budget < 1) throw ConfigError("budget must be >= 1");
  if (reevaluation.enabled) noise_mode_from_string(reevaluation.mode);
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "hamiltonian.kind=" << hamiltonian.kind << "\n";
  if (hamiltonian.kind == "ising") out << "hamiltonian.n_qubits=" << hamiltonian.n_qubits << "\n";
  if (hamiltonian.kind == "hubbard")
    out << "hamiltonian.n_sites=" << hamiltonian.n_sites << "\nhamiltonian.t=" << hamiltonian.t
        << "\nhamiltonian.u=" << hamiltonian.u << "\nhamiltonian.boundary=" << hamiltonian.boundary
        << "\n";
  if (hamiltonian.kind == "file") out << "hamiltonian.path=" << hamiltonian.path << "\n";
  out << "ansatz.family=" << ansatz.family << "\n";
  if (ansatz.family == "twolocal")
    out << "ansatz.reps=" << ansatz.reps << "\nansatz.entangler=" << ansatz.entangler
        << "\nansatz.entanglement=" << ansatz.entanglement << "\n";
  else
    out << "ansatz.layers=" << ansatz.layers << "\nansatz.p=" << ansatz.p
        << "\nansatz.hf_occupation=" << ansatz.hf_occupation << "\n";
  out << "optimizer.algorithm=" << to_string(optimizer.algorithm)
      << "\noptimizer.budget=" << optimizer.budget
      << "\noptimizer.population=" << optimizer.population << "\n";
  for (const auto& [k, v] : optimizer.params) out << "optimizer." << k << "=" << v << "\n";
  out << "noise.mode=" << noise.mode << "\nnoise.shots=" << noise.shots << "\n";
  out << "run.n_runs=" << run.n_runs << "\nrun.seed=" << run.seed << "\nrun.init=" << run.init
      << "\nrun.tolerance=" << run.tolerance << "\n";
  for (double v : run.init_values) out << "run.init_value=" << v << "\n";
  out << "reevaluation.enabled=" << (reevaluation.enabled ? 1 : 0)
      << "\nreevaluation.mode=" << reevaluation.mode
      << "\nreevaluation.shots=" << reevaluation.shots << "\n";
  return out.str();
}

std::string ExperimentConfig::hash() const {
  // FNV-1a 64 over the canonical text.
  const std::string text = canonical_text();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string ExperimentConfig::label() const {
  std::string model = hamiltonian.kind;
  if (hamiltonian.kind == "ising") model += std::to_string(hamiltonian.n_qubits) + "q";
  if (hamiltonian.kind == "hubbard") model += std::to_string(hamiltonian.n_sites) + "s";
  if (hamiltonian.kind == "file")
    model = std::filesystem::path(hamiltonian.path).stem().string();
  return name + "/" + model + "/" + to_string(optimizer.algorithm) + "/" + noise.mode + "@" +
         std::to_string(noise.shots);
}

Hamiltonian build_hamiltonian(const HamiltonianSpec& spec) {
  if (spec.kind == "ising") return build_ising(spec.n_qubits);
  if (spec.kind == "hubbard") {
    const Boundary b = spec.boundary == "periodic" ? Boundary::periodic : Boundary::open;
    if (spec.boundary != "open" && spec.boundary != "periodic")
      throw ConfigError("hubbard boundary must be open or periodic");
    return build_hubbard(spec.n_sites, spec.t, spec.u, b);
  }
  if (spec.kind == "file") return load_hamiltonian(spec.path);
  throw ConfigError("unknown hamiltonian kind: " + spec.kind);
}

std::shared_ptr<const Ansatz> build_ansatz(const AnsatzSpec& spec, const Hamiltonian& h) {
  if (spec.family == "twolocal") {
    const Entangler ent = spec.entangler == "cz" ? Entangler::cz : Entangler::cx;
    if (spec.entangler != "cx" && spec.entangler != "cz")
      throw ConfigError("entangler must be cx or cz");
    const Entanglement topo =
        spec.entanglement == "circular" ? Entanglement::circular : Entanglement::linear;
    if (spec.entanglement != "linear" && spec.entanglement != "circular")
      throw ConfigError("entanglement must be linear or circular");
    return std::make_shared<Ansatz>(
        build_twolocal(h.n_qubits(), spec.reps, Rotation::ry, ent, topo));
  }
  if (spec.family == "tvha") {
    const std::uint64_t occ = spec.hf_occupation.empty()
                                  ? 0
                                  : occupation_index(spec.hf_occupation, h.n_qubits());
    return std::make_shared<Ansatz>(build_tvha(h, spec.p, spec.layers, occ));
  }
  throw ConfigError("unknown ansatz family: " + spec.family);
}

}  // namespace vqelab
