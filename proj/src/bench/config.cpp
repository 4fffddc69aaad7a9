#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "vqebench/bench.hpp"
#include "vqebench/errors.hpp"

namespace vqe::bench {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
    }
  }
}

template <typename T>
T get(const json& j, std::string_view key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("config key '{}' has the wrong type", key));
  }
}

std::uint64_t get_count(const json& j, std::string_view key) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  throw ConfigError(fmt::format("config key '{}' must be a non-negative integer", key));
}

Shots parse_shots(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "exact") throw ConfigError("shots must be an integer or \"exact\"");
    return std::nullopt;
  }
  const std::uint64_t n = get_count(j, "shots");
  if (n < 1 || n > estimator::ShotConfig::kMaxShots) {
    throw ConfigError(fmt::format("shots must lie in [1, {}]", estimator::ShotConfig::kMaxShots));
  }
  return n;
}

OptimizerEntry parse_optimizer(const json& j) {
  if (j.is_string()) return {j.get<std::string>(), {}};
  if (!j.is_object()) throw ConfigError("optimizer entries must be names or objects");
  reject_unknown(j, {"name", "overrides"}, "optimizer entry");
  if (!j.contains("name")) throw ConfigError("optimizer entry lacks 'name'");
  OptimizerEntry e{get<std::string>(j.at("name"), "name"), {}};
  if (j.contains("overrides")) {
    const json& o = j.at("overrides");
    if (!o.is_object()) throw ConfigError("'overrides' must be an object");
    for (const auto& [key, value] : o.items()) {
      if (!value.is_number()) throw ConfigError(fmt::format("override '{}' must be a number", key));
      e.overrides[key] = value.get<double>();
    }
  }
  return e;
}

std::vector<OptimizerEntry> all_optimizers() {
  std::vector<OptimizerEntry> out;
  for (const auto& name : optim::algorithms()) out.push_back({name, {}});
  return out;
}

}  // namespace

std::string shots_label(const Shots& shots) { return shots ? std::to_string(*shots) : "exact"; }

void PhaseConfig::validate() const {
  if (phase < 1 || phase > 3) throw ConfigError(fmt::format("phase must be 1, 2 or 3, got {}", phase));
  if (runs_per_cell < 1) throw ConfigError("runs_per_cell must be at least 1");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (budget < 1) throw ConfigError("budget must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (optimizers.empty()) throw ConfigError("no optimizers selected");
  if (shots.empty()) throw ConfigError("no shot setting selected");
  if (phase != 3 && shots.size() != 1) throw ConfigError("phases 1 and 2 take a single shot setting");
  const auto check_width = [](std::size_t n) {
    if (n < 2 || n > models::kMaxSpectrumQubits) {
      throw ConfigError(fmt::format("Ising width must lie in [2, {}], got {}", models::kMaxSpectrumQubits, n));
    }
  };
  if (phase == 1) check_width(ising_qubits);
  if (phase == 2) {
    if (qubits.empty()) throw ConfigError("phase 2 needs at least one qubit count");
    for (std::size_t n : qubits) check_width(n);
  }
  if (phase == 3) {
    if (hubbard.sites < 2 || 2 * hubbard.sites > models::kMaxSpectrumQubits) {
      throw ConfigError(fmt::format("Hubbard sites must lie in [2, {}]", models::kMaxSpectrumQubits / 2));
    }
    if (hva_layers < 1) throw ConfigError("Hubbard ansatz needs at least one layer");
  }

  std::vector<std::size_t> dims;
  if (phase == 1) dims.push_back(4 * ising_qubits);
  if (phase == 2) {
    for (std::size_t n : qubits) dims.push_back(4 * n);
  }
  if (phase == 3) dims.push_back(sim::build_hubbard_hva(hubbard.sites, hva_layers, hubbard.periodic).n_params());
  for (const auto& entry : optimizers) {
    for (std::size_t dim : dims) {
      optim::OptimizerSpec spec;
      try {
        spec = optim::default_spec(entry.name, dim);
      } catch (const UnsupportedError& e) {
        throw ConfigError(e.what());
      }
      spec.hyperparams = entry.overrides;
      spec.budget = budget;
      optim::validate_spec(spec);
    }
  }
}

PhaseConfig default_config(int phase, Profile profile) {
  PhaseConfig cfg;
  cfg.phase = phase;
  cfg.optimizers = all_optimizers();
  cfg.shots = {Shots{5120}};
  if (phase == 3) cfg.shots = {Shots{64}, Shots{5120}};
  cfg.early_stop = phase != 3;
  if (profile == Profile::Quick) {
    cfg.runs_per_cell = 3;
    cfg.qubits = {3, 4, 5, 6};
    cfg.budget = 30000;
  } else {
    cfg.runs_per_cell = 5;
    cfg.qubits = {3, 4, 5, 6, 7, 8, 9};
    cfg.budget = phase == 3 ? 100000 : 200000;
  }
  return cfg;
}

void apply_config_json(PhaseConfig& cfg, const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(root,
                 {"phase", "model", "ising", "hubbard", "qubits", "optimizers", "runs_per_cell", "tolerance", "shots",
                  "seed", "budget", "output_dir", "threads", "stagnation", "early_stop"},
                 "config");

  if (root.contains("phase") && static_cast<int>(get_count(root["phase"], "phase")) != cfg.phase) {
    throw ConfigError(fmt::format("config is for phase {}, command runs phase {}", root["phase"].dump(), cfg.phase));
  }
  if (root.contains("model")) {
    const auto model = get<std::string>(root["model"], "model");
    const std::string expected = cfg.phase == 3 ? "hubbard" : "ising";
    if (model != expected) throw ConfigError(fmt::format("phase {} uses the {} model, not '{}'", cfg.phase, expected, model));
  }
  if (root.contains("ising")) {
    const json& j = root["ising"];
    reject_unknown(j, {"n_qubits"}, "ising");
    if (j.contains("n_qubits")) cfg.ising_qubits = get_count(j["n_qubits"], "ising.n_qubits");
  }
  if (root.contains("hubbard")) {
    const json& j = root["hubbard"];
    reject_unknown(j, {"sites", "t", "U", "periodic", "layers"}, "hubbard");
    if (j.contains("sites")) cfg.hubbard.sites = get_count(j["sites"], "hubbard.sites");
    if (j.contains("t")) cfg.hubbard.t = get<double>(j["t"], "hubbard.t");
    if (j.contains("U")) cfg.hubbard.U = get<double>(j["U"], "hubbard.U");
    if (j.contains("periodic")) cfg.hubbard.periodic = get<bool>(j["periodic"], "hubbard.periodic");
    if (j.contains("layers")) cfg.hva_layers = get_count(j["layers"], "hubbard.layers");
  }
  if (root.contains("qubits")) {
    if (!root["qubits"].is_array()) throw ConfigError("'qubits' must be an array");
    cfg.qubits.clear();
    for (const auto& q : root["qubits"]) cfg.qubits.push_back(get_count(q, "qubits"));
  }
  if (root.contains("optimizers")) {
    const json& j = root["optimizers"];
    if (!j.is_array()) throw ConfigError("'optimizers' must be an array");
    cfg.optimizers.clear();
    for (const auto& o : j) cfg.optimizers.push_back(parse_optimizer(o));
  }
  if (root.contains("runs_per_cell")) cfg.runs_per_cell = get_count(root["runs_per_cell"], "runs_per_cell");
  if (root.contains("tolerance")) cfg.tolerance = get<double>(root["tolerance"], "tolerance");
  if (root.contains("shots")) {
    const json& j = root["shots"];
    cfg.shots.clear();
    if (j.is_array()) {
      for (const auto& s : j) cfg.shots.push_back(parse_shots(s));
    } else {
      cfg.shots.push_back(parse_shots(j));
    }
  }
  if (root.contains("seed")) cfg.seed_base = get_count(root["seed"], "seed");
  if (root.contains("budget")) cfg.budget = get_count(root["budget"], "budget");
  if (root.contains("output_dir")) cfg.output_dir = get<std::string>(root["output_dir"], "output_dir");
  if (root.contains("threads")) cfg.threads = static_cast<unsigned>(get_count(root["threads"], "threads"));
  if (root.contains("stagnation")) cfg.stagnation = get<bool>(root["stagnation"], "stagnation");
  if (root.contains("early_stop")) cfg.early_stop = get<bool>(root["early_stop"], "early_stop");
}

PhaseConfig load_config(const std::filesystem::path& path, int phase, Profile profile) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file {}", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  PhaseConfig cfg = default_config(phase, profile);
  apply_config_json(cfg, text.str());
  return cfg;
}

}  // namespace vqe::bench
