#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "vqebench/bench.hpp"
#include "vqebench/errors.hpp"
#include "vqebench/random.hpp"

namespace vqe::bench {

namespace {

constexpr std::uint64_t kNoiseSalt = 0x6e6f697365ULL;

std::uint64_t hash_text(std::string_view s) { return hash_string(s.data(), s.size()); }

struct Job {
  std::size_t problem;
  std::size_t optimizer;
  Shots shots;
  std::size_t run;
};

// Canonical cell order: optimizer name, model width, shots (exact last), run.
bool job_less(const Job& a, const Job& b, const std::vector<Problem>& problems,
              const std::vector<OptimizerEntry>& optimizers) {
  const auto key = [&](const Job& j) {
    return std::make_tuple(optimizers[j.optimizer].name, problems[j.problem].n_qubits, problems[j.problem].model_id,
                           !j.shots.has_value(), j.shots.value_or(0), j.run, j.optimizer);
  };
  return key(a) < key(b);
}

PhaseResult run_jobs(const PhaseConfig& cfg, const std::vector<Problem>& problems) {
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < problems.size(); ++p) {
    for (std::size_t o = 0; o < cfg.optimizers.size(); ++o) {
      for (const auto& shots : cfg.shots) {
        for (std::size_t r = 0; r < cfg.runs_per_cell; ++r) jobs.push_back({p, o, shots, r});
      }
    }
  }
  std::stable_sort(jobs.begin(), jobs.end(),
                   [&](const Job& a, const Job& b) { return job_less(a, b, problems, cfg.optimizers); });

  PhaseResult result;
  result.records.resize(jobs.size());
  result.checkpoints = checkpoint_grid(cfg.budget);
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      try {
        result.records[i] = run_cell(problems[job.problem], cfg.optimizers[job.optimizer], job.shots, job.run, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(jobs.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

}  // namespace

Problem ising_problem(std::size_t n_qubits) {
  Problem p;
  p.model_id = fmt::format("ising-{}q", n_qubits);
  p.n_qubits = n_qubits;
  p.hamiltonian = models::ising_hamiltonian(n_qubits);
  p.circuit = sim::build_ising_ansatz(n_qubits);
  p.ground_energy = models::exact_spectrum(p.hamiltonian, 1).ground();
  return p;
}

Problem hubbard_problem(const models::HubbardSpec& spec, std::size_t layers) {
  Problem p;
  p.model_id = fmt::format("hubbard-{}s-{}l", spec.sites, layers);
  p.n_qubits = 2 * spec.sites;
  p.hamiltonian = models::hubbard_hamiltonian(spec);
  p.circuit = sim::build_hubbard_hva(spec.sites, layers, spec.periodic);
  p.ground_energy = models::exact_spectrum(p.hamiltonian, 1).ground();
  return p;
}

bool success_check(estimator::EnergyObjective& objective, std::span<const double> params, double ground_energy,
                   double tolerance) {
  return objective.exact_energy(params) <= ground_energy + tolerance;
}

double RunRecord::best_at(std::uint64_t fe) const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [at, value] : history) {
    if (at > fe) break;
    best = value;
  }
  return best;
}

std::uint64_t run_seed(std::uint64_t seed_base, std::string_view optimizer, std::string_view model, std::size_t run) {
  return hash_words({seed_base, hash_text(optimizer), hash_text(model), static_cast<std::uint64_t>(run)});
}

RunRecord run_cell(const Problem& problem, const OptimizerEntry& entry, const Shots& shots, std::size_t run,
                   const PhaseConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.optimizer = entry.name;
  rec.model = problem.model_id;
  rec.n_qubits = problem.n_qubits;
  rec.shots = shots;
  rec.run = run;
  rec.seed = run_seed(cfg.seed_base, entry.name, problem.model_id, run);
  rec.budget = cfg.budget;

  const std::uint64_t noise_seed = mix64(rec.seed ^ kNoiseSalt);
  const auto shot_cfg = shots ? estimator::ShotConfig::sampled(*shots, noise_seed) : estimator::ShotConfig::exact(noise_seed);
  estimator::EnergyObjective objective(problem.circuit, problem.hamiltonian, shot_cfg);

  optim::OptimizerSpec spec = optim::default_spec(entry.name, objective.n_params());
  spec.hyperparams = entry.overrides;
  spec.budget = cfg.budget;
  spec.seed = rec.seed;
  spec.stop_on_stagnation = cfg.stagnation;
  if (cfg.early_stop) spec.target = optim::Target{problem.ground_energy, cfg.tolerance};

  double last_error = 0.0;
  const optim::Objective f = [&](std::span<const double> x) {
    const auto e = objective.evaluate_with_error(x);
    last_error = e.std_error;
    return e.value;
  };
  // A sampled hit must clear the threshold by three standard errors before
  // the exact energy is consulted.
  std::optional<std::vector<double>> confirmed;
  const optim::TargetConfirmation confirm = [&](std::span<const double> x, double value) {
    if (value > problem.ground_energy + cfg.tolerance - 3.0 * last_error) return false;
    if (objective.exact_energy(x) > problem.ground_energy + cfg.tolerance) return false;
    confirmed.emplace(x.begin(), x.end());
    return true;
  };

  const optim::RunResult result = optim::minimize(spec, f, confirm);
  rec.termination = result.termination;
  rec.fe_used = result.fe_used;
  for (const auto& p : result.trace.points) {
    if (p.is_new_best) rec.history.emplace_back(p.fe, p.value);
  }

  const std::vector<double>& final_params = confirmed ? *confirmed : result.trace.best_params;
  rec.best_exact_energy = objective.exact_energy(final_params);
  rec.success = rec.best_exact_energy <= problem.ground_energy + cfg.tolerance;
  if (rec.success) rec.fe_to_target = confirmed ? result.fe_used : result.trace.best_fe;
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<std::uint64_t> checkpoint_grid(std::uint64_t budget) {
  std::vector<std::uint64_t> grid;
  for (std::uint64_t fe = 1; fe < budget; fe *= 2) grid.push_back(fe);
  grid.push_back(budget);
  return grid;
}

PhaseResult run_phase1(const PhaseConfig& cfg) {
  if (cfg.phase != 1) throw ConfigError("run_phase1 needs a phase-1 config");
  cfg.validate();
  return run_jobs(cfg, {ising_problem(cfg.ising_qubits)});
}

PhaseResult run_phase2(const PhaseConfig& cfg) {
  if (cfg.phase != 2) throw ConfigError("run_phase2 needs a phase-2 config");
  cfg.validate();
  std::vector<Problem> problems;
  for (std::size_t n : cfg.qubits) problems.push_back(ising_problem(n));
  return run_jobs(cfg, problems);
}

PhaseResult run_phase3(const PhaseConfig& cfg) {
  if (cfg.phase != 3) throw ConfigError("run_phase3 needs a phase-3 config");
  cfg.validate();
  return run_jobs(cfg, {hubbard_problem(cfg.hubbard, cfg.hva_layers)});
}

PhaseResult run_phase(const PhaseConfig& cfg) {
  switch (cfg.phase) {
    case 1: return run_phase1(cfg);
    case 2: return run_phase2(cfg);
    case 3: return run_phase3(cfg);
  }
  throw ConfigError(fmt::format("phase must be 1, 2 or 3, got {}", cfg.phase));
}

std::vector<CellSummary> summarize(const std::vector<RunRecord>& records) {
  std::vector<CellSummary> cells;
  std::vector<double> fe_sums;
  for (const auto& r : records) {
    auto it = std::find_if(cells.begin(), cells.end(), [&](const CellSummary& c) {
      return c.optimizer == r.optimizer && c.model == r.model && c.shots == r.shots;
    });
    if (it == cells.end()) {
      cells.push_back({r.optimizer, r.model, r.shots, 0, 0, std::nullopt});
      fe_sums.push_back(0.0);
      it = cells.end() - 1;
    }
    ++it->runs;
    if (r.fe_to_target) {
      ++it->successes;
      fe_sums[static_cast<std::size_t>(it - cells.begin())] += static_cast<double>(*r.fe_to_target);
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].successes == cells[i].runs) cells[i].mean_fe = fe_sums[i] / static_cast<double>(cells[i].runs);
  }
  return cells;
}

bool phase1_pass(const CellSummary& cell) { return cell.successes > 0; }

}  // namespace vqe::bench
