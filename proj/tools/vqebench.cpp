#include <cstdio>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "vqebench/bench.hpp"
#include "vqebench/errors.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

using namespace vqe;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct PhaseOptions {
  std::string config;
  std::string out;
  std::string profile = "paper";
  std::string optimizers;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

int run_phase_command(int phase, const PhaseOptions& opt) {
  const auto profile = opt.profile == "quick" ? bench::Profile::Quick : bench::Profile::Paper;
  bench::PhaseConfig cfg = bench::load_config(opt.config, phase, profile);
  if (!opt.optimizers.empty()) {
    std::vector<bench::OptimizerEntry> chosen;
    for (const auto& name : split_list(opt.optimizers)) {
      auto it = std::find_if(cfg.optimizers.begin(), cfg.optimizers.end(),
                             [&](const bench::OptimizerEntry& e) { return e.name == name; });
      chosen.push_back(it != cfg.optimizers.end() ? *it : bench::OptimizerEntry{name, {}});
    }
    cfg.optimizers = std::move(chosen);
  }
  if (opt.seed) cfg.seed_base = *opt.seed;
  if (opt.threads) cfg.threads = *opt.threads;
  cfg.output_dir = opt.out;
  cfg.validate();

  const bench::PhaseResult result = bench::run_phase(cfg);
  bench::export_results(result, cfg.output_dir);

  for (const auto& cell : bench::summarize(result.records)) {
    std::string verdict = cell.mean_fe ? fmt::format("mean FE {:.0f}", *cell.mean_fe) : "---";
    if (phase == 1) verdict = fmt::format("{}  ({})", bench::phase1_pass(cell) ? "PASS" : "FAIL", verdict);
    fmt::print("{:<14} {:<16} shots={:<6} {}/{} solved  {}\n", cell.optimizer, cell.model,
               bench::shots_label(cell.shots), cell.successes, cell.runs, verdict);
  }
  fmt::print("wrote {}\n", cfg.output_dir.string());
  return 0;
}

int run_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read model file {}", path));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("model file is not valid JSON: {}", e.what()));
  }
  if (!j.is_object() || !j.contains("model")) throw ConfigError("model file needs a 'model' key");
  for (const auto& [key, value] : j.items()) {
    if (key != "model" && key != "n_qubits" && key != "sites" && key != "t" && key != "U" && key != "periodic" &&
        key != "k") {
      throw ConfigError(fmt::format("unknown key '{}' in model file", key));
    }
  }
  const std::size_t k = j.value("k", std::size_t{10});
  const std::string model = j["model"].get<std::string>();
  if (model == "ising") {
    const auto s = models::exact_spectrum(models::ising_hamiltonian(j.value("n_qubits", std::size_t{5})), k);
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) fmt::print("{:>3} {:.12f}\n", i, s.eigenvalues[i]);
    return 0;
  }
  if (model == "hubbard") {
    models::HubbardSpec spec;
    spec.sites = j.value("sites", spec.sites);
    spec.t = j.value("t", spec.t);
    spec.U = j.value("U", spec.U);
    spec.periodic = j.value("periodic", spec.periodic);
    const auto s = models::exact_spectrum(models::hubbard_hamiltonian(spec), k);
    const bool compare = spec.sites == 6;
    fmt::print("{:>3} {:>18}{}\n", "#", "computed", compare ? "  published" : "");
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      fmt::print("{:>3} {:>18.12f}", i, s.eigenvalues[i]);
      if (compare && i < models::kPublishedHubbardSpectrum.size()) {
        fmt::print("  {:>9.1f}", models::kPublishedHubbardSpectrum[i]);
      }
      fmt::print("\n");
    }
    return 0;
  }
  throw ConfigError(fmt::format("unknown model '{}'", model));
}

int run_validate() {
  bool ok = true;
  for (const auto& c : bench::run_validation()) {
    fmt::print("[{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
    ok = ok && c.passed;
  }
  return ok ? 0 : kRuntimeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metaheuristic optimizer benchmark on noisy VQE energy landscapes"};
  app.require_subcommand(1);

  PhaseOptions phase_opt;
  std::vector<CLI::App*> phases;
  for (int phase = 1; phase <= 3; ++phase) {
    auto* sub = app.add_subcommand(fmt::format("phase{}", phase), fmt::format("Run protocol phase {}", phase));
    sub->add_option("--config", phase_opt.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", phase_opt.out, "Output directory")->required();
    sub->add_option("--profile", phase_opt.profile, "Default profile")->check(CLI::IsMember({"quick", "paper"}));
    sub->add_option("--optimizers", phase_opt.optimizers, "Comma-separated optimizer list");
    sub->add_option("--seed", phase_opt.seed, "Seed base");
    sub->add_option("--threads", phase_opt.threads, "Worker threads");
    phases.push_back(sub);
  }
  std::string model_file;
  auto* spectrum = app.add_subcommand("spectrum", "Print exact low-lying eigenvalues of a model");
  spectrum->add_option("--model", model_file, "JSON model file")->required();
  auto* validate = app.add_subcommand("validate", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    for (int phase = 1; phase <= 3; ++phase) {
      if (phases[static_cast<std::size_t>(phase - 1)]->parsed()) return run_phase_command(phase, phase_opt);
    }
    if (spectrum->parsed()) return run_spectrum(model_file);
    if (validate->parsed()) return run_validate();
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const UnsupportedError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kRuntimeError;
  }
  return 0;
}
