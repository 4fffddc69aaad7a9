#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqebench/estimator.hpp"
#include "vqebench/models.hpp"
#include "vqebench/optim.hpp"
#include "vqebench/pauli.hpp"
#include "vqebench/simulator.hpp"

namespace vqe::bench {

enum class Profile { Quick, Paper };

struct OptimizerEntry {
  std::string name;
  optim::Hyperparams overrides;
};

/// Shot setting of one cell; nullopt means exact expectation values.
using Shots = std::optional<std::uint64_t>;

std::string shots_label(const Shots& shots);

struct PhaseConfig {
  int phase = 1;
  /// Phase 1: the Ising width. Phase 2: one cell per entry of `qubits`.
  std::size_t ising_qubits = 5;
  std::vector<std::size_t> qubits;
  models::HubbardSpec hubbard;
  std::size_t hva_layers = 10;
  std::vector<OptimizerEntry> optimizers;
  std::size_t runs_per_cell = 5;
  double tolerance = 0.1;
  std::vector<Shots> shots;
  std::uint64_t seed_base = 0;
  std::uint64_t budget = 200000;
  std::filesystem::path output_dir = "results";
  unsigned threads = 1;
  bool stagnation = false;
  /// Stop a run once a sampled value is confirmed at the target.
  bool early_stop = true;

  /// Throws ConfigError on violated invariants.
  void validate() const;
};

/// Profile defaults for a phase; every registered optimizer is included.
PhaseConfig default_config(int phase, Profile profile);

/// Overlays JSON config text onto `cfg`; unknown keys are a ConfigError.
void apply_config_json(PhaseConfig& cfg, const std::string& text);
PhaseConfig load_config(const std::filesystem::path& path, int phase, Profile profile);

/// A concrete benchmark objective: Hamiltonian, ansatz and exact ground energy.
struct Problem {
  std::string model_id;
  std::size_t n_qubits = 0;
  pauli::PauliSum hamiltonian{1};
  sim::Circuit circuit{1};
  double ground_energy = 0.0;
};

Problem ising_problem(std::size_t n_qubits);
Problem hubbard_problem(const models::HubbardSpec& spec, std::size_t layers);

/// True iff the exact energy at `params` is within `tolerance` of E0.
/// Costs exactly one EXACT evaluation and no FE.
bool success_check(estimator::EnergyObjective& objective, std::span<const double> params,
                   double ground_energy, double tolerance);

struct RunRecord {
  std::string optimizer;
  std::string model;
  std::size_t n_qubits = 0;
  Shots shots;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::optional<std::uint64_t> fe_to_target;
  bool success = false;
  double best_exact_energy = 0.0;
  optim::Termination termination = optim::Termination::Budget;
  std::uint64_t fe_used = 0;
  double wall_time = 0.0;
  /// Best-so-far history: (fe, value) at each improvement.
  std::vector<std::pair<std::uint64_t, double>> history;

  /// Best-so-far value at `fe`, carried forward past the end of the run.
  double best_at(std::uint64_t fe) const noexcept;
};

/// seed = hash(seed_base, optimizer, model, run).
std::uint64_t run_seed(std::uint64_t seed_base, std::string_view optimizer, std::string_view model,
                       std::size_t run);

/// One seeded run of `entry` on `problem`.
RunRecord run_cell(const Problem& problem, const OptimizerEntry& entry, const Shots& shots,
                   std::size_t run, const PhaseConfig& cfg);

struct PhaseResult {
  std::vector<RunRecord> records;  // canonical order
  std::vector<std::uint64_t> checkpoints;
};

PhaseResult run_phase1(const PhaseConfig& cfg);
PhaseResult run_phase2(const PhaseConfig& cfg);
PhaseResult run_phase3(const PhaseConfig& cfg);
PhaseResult run_phase(const PhaseConfig& cfg);

/// 1, 2, 4, ... below `budget`, then `budget`.
std::vector<std::uint64_t> checkpoint_grid(std::uint64_t budget);

/// Per-(optimizer, model, shots) aggregate.
struct CellSummary {
  std::string optimizer;
  std::string model;
  Shots shots;
  std::size_t runs = 0;
  std::size_t successes = 0;
  /// Mean FE-to-target; nullopt unless every run succeeded.
  std::optional<double> mean_fe;
};

std::vector<CellSummary> summarize(const std::vector<RunRecord>& records);

/// Phase 1 verdict: at least one successful run.
bool phase1_pass(const CellSummary& cell);

std::string runs_jsonl(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_runs_jsonl(const std::string& text);
std::string summary_csv(const std::vector<RunRecord>& records);
std::string curves_csv(const std::vector<RunRecord>& records, const std::vector<std::uint64_t>& checkpoints);
std::string timings_jsonl(const std::vector<RunRecord>& records);

/// Writes runs.jsonl, summary.csv, curves.csv and timings.jsonl into `dir`.
void export_results(const PhaseResult& result, const std::filesystem::path& dir);

/// Ground energy of a free-fermion (U = 0) Hubbard chain or ring: twice the
/// sum of the negative single-particle band energies.
double band_filling_energy(std::size_t sites, double t, bool periodic);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant suite: spectra, oracles, estimator and ansatz properties.
std::vector<CheckResult> run_validation();

}  // namespace vqe::bench
