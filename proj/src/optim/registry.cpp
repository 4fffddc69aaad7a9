#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "algorithms.hpp"
#include "vqebench/errors.hpp"
#include "vqebench/optim.hpp"

namespace vqe::optim {

namespace {

/// Unwinds an algorithm body once the run is over.
struct StopSearch {
  Termination reason;
};

constexpr double kStagnationThreshold = 1e-8;
constexpr std::uint64_t kStagnationWindowPerDim = 20;

std::uint64_t population(const Hyperparams& p, std::size_t) {
  return static_cast<std::uint64_t>(std::llround(p.at("pop_size")));
}

std::uint64_t single(const Hyperparams&, std::size_t) { return 1; }

Hyperparams sa_defaults(std::size_t) {
  return {{"t_max", 100.0}, {"t_min", 1e-7}, {"L", 300.0}, {"max_stay", 150.0}, {"learn_rate", 0.5}};
}

Hyperparams de_defaults(std::size_t dim) {
  return {{"pop_size", 15.0 * static_cast<double>(dim)}, {"F", 0.5}, {"CR", 0.6}};
}

std::vector<AlgorithmInfo> builtin_algorithms() {
  using namespace detail;
  std::vector<AlgorithmInfo> v;
  v.push_back({"cmaes",
               [](std::size_t n) { return Hyperparams{{"pop_size", 5.0 * static_cast<double>(n)}, {"sigma", 0.5}}; },
               population, run_cmaes});
  v.push_back({"cmaes_ft",
               [](std::size_t n) {
                 const double pop = 4.0 + std::floor(3.0 * std::log(static_cast<double>(n)));
                 return Hyperparams{{"pop_size", pop}, {"sigma", 0.4}};
               },
               population, run_cmaes});
  v.push_back({"de_best1bin", de_defaults, population, run_de_best1bin});
  v.push_back({"de_best1exp", de_defaults, population, run_de_best1exp});
  v.push_back({"de_rand1", de_defaults, population, run_de_rand1});
  v.push_back({"shade",
               [](std::size_t) {
                 return Hyperparams{{"pop_size", 100.0}, {"miu_f", 0.5}, {"miu_cr", 0.5}, {"memory_size", 100.0}};
               },
               population, run_shade});
  v.push_back({"ilshade",
               [](std::size_t n) {
                 return Hyperparams{{"pop_size", 12.0 * static_cast<double>(n)}, {"memory_size", 6.0}, {"min_pop_size", 4.0}};
               },
               population, run_ilshade});
  v.push_back({"ga",
               [](std::size_t) {
                 return Hyperparams{{"pop_size", 50.0}, {"pc", 0.9}, {"pm", 0.05}, {"tournament", 3.0},
                                    {"blend_alpha", 0.5}, {"mutation_scale", 0.1}};
               },
               population, run_ga});
  v.push_back({"hs",
               [](std::size_t) {
                 return Hyperparams{{"memory_size", 50.0}, {"c_r", 0.95}, {"pa_r", 0.05}, {"bandwidth", 0.05}};
               },
               [](const Hyperparams& p, std::size_t) { return static_cast<std::uint64_t>(std::llround(p.at("memory_size"))); },
               run_hs});
  v.push_back({"sa_fast", sa_defaults, single, run_sa_fast});
  v.push_back({"sa_boltzmann", sa_defaults, single, run_sa_boltzmann});
  v.push_back({"sa_cauchy", sa_defaults, single, run_sa_cauchy});
  v.push_back({"isoma",
               [](std::size_t) {
                 return Hyperparams{{"n_jump", 10.0}, {"step", 0.11}, {"pop_size", 40.0}, {"prt", 0.1},
                                    {"m", 30.0}, {"n", 20.0}, {"s", 3.0}};
               },
               population, run_isoma});
  v.push_back({"pso",
               [](std::size_t) {
                 return Hyperparams{{"pop_size", 40.0}, {"w", 0.8}, {"c1", 0.5}, {"c2", 0.5}, {"v_max", 0.5}};
               },
               population, run_pso});
  v.push_back({"sos", [](std::size_t) { return Hyperparams{{"pop_size", 50.0}}; }, population, run_sos});
  v.push_back({"spsa",
               [](std::size_t) {
                 return Hyperparams{{"a", 0.2}, {"c", 0.1}, {"alpha", 0.602}, {"gamma", 0.101}, {"A_fraction", 0.01}};
               },
               [](const Hyperparams&, std::size_t) -> std::uint64_t { return 2; }, run_spsa});
  return v;
}

struct Registry {
  std::mutex mutex;
  std::map<std::string, AlgorithmInfo, std::less<>> entries;

  Registry() {
    for (auto& info : builtin_algorithms()) entries.emplace(info.name, std::move(info));
  }

  AlgorithmInfo find(std::string_view name) {
    std::lock_guard lock(mutex);
    auto it = entries.find(name);
    if (it == entries.end()) throw UnsupportedError(fmt::format("unknown optimizer '{}'", name));
    return it->second;
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Budget: return "BUDGET";
    case Termination::Target: return "TARGET";
    case Termination::Stagnation: return "STAGNATION";
  }
  return "UNKNOWN";
}

double Trace::best_at(std::uint64_t fe) const noexcept {
  // Points are in FE order, so the last new-best at or before `fe` wins.
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    if (p.fe > fe) break;
    best = std::min(best, p.value);
  }
  return best;
}

SearchContext::SearchContext(const OptimizerSpec& spec, const Hyperparams& params, const Objective& objective,
                             const TargetConfirmation& confirm)
    : bounds_(spec.bounds),
      params_(params),
      objective_(objective),
      confirm_(confirm),
      target_(spec.target),
      stop_on_stagnation_(spec.stop_on_stagnation),
      budget_(spec.budget),
      rng_(mix64(spec.seed)) {}

double SearchContext::param(std::string_view key) const {
  auto it = params_.find(key);
  if (it == params_.end()) throw ConfigError(fmt::format("missing hyperparameter '{}'", key));
  return it->second;
}

std::size_t SearchContext::count_param(std::string_view key) const {
  const double v = param(key);
  if (!(v >= 0.0)) throw ConfigError(fmt::format("hyperparameter '{}' must be a non-negative count", key));
  return static_cast<std::size_t>(std::llround(v));
}

void SearchContext::clip(std::span<double> x) const noexcept {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], bounds_[i].low, bounds_[i].high);
}

std::vector<double> SearchContext::random_point() {
  std::vector<double> x(dimension());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng_.uniform(bounds_[i].low, bounds_[i].high);
  return x;
}

double SearchContext::evaluate(std::vector<double>& x) {
  if (fe_ >= budget_) throw StopSearch{Termination::Budget};
  clip(x);
  const double value = objective_(x);
  ++fe_;
  const bool improved = value < trace_.best_value;
  trace_.points.push_back({fe_, value, improved});
  if (improved) {
    trace_.best_value = value;
    trace_.best_params = x;
    trace_.best_fe = fe_;
  }
  if (target_ && value <= target_->value + target_->tolerance && (!confirm_ || confirm_(x, value))) {
    throw StopSearch{Termination::Target};
  }
  if (stop_on_stagnation_) {
    if (value < stagnation_reference_ - kStagnationThreshold) {
      stagnation_reference_ = value;
      last_improvement_fe_ = fe_;
    } else if (fe_ - last_improvement_fe_ >= kStagnationWindowPerDim * dimension()) {
      throw StopSearch{Termination::Stagnation};
    }
  }
  if (fe_ >= budget_) throw StopSearch{Termination::Budget};
  return value;
}

void SearchContext::stagnate() const { throw StopSearch{Termination::Stagnation}; }

void register_algorithm(AlgorithmInfo info) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  const std::string name = info.name;
  r.entries.insert_or_assign(name, std::move(info));
}

std::vector<std::string> algorithms() {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  std::vector<std::string> names;
  for (const auto& [name, info] : r.entries) names.push_back(name);
  return names;
}

OptimizerSpec default_spec(std::string_view algorithm, std::size_t dimension) {
  const AlgorithmInfo info = registry().find(algorithm);
  OptimizerSpec spec;
  spec.algorithm = std::string(algorithm);
  spec.hyperparams = info.defaults(dimension);
  spec.bounds.assign(dimension, Bound{-2.0 * std::numbers::pi, 2.0 * std::numbers::pi});
  return spec;
}

namespace {

Hyperparams prepare(const OptimizerSpec& spec, const AlgorithmInfo& info) {
  const std::size_t dim = spec.dimension();
  if (dim == 0) throw ConfigError("optimizer needs at least one dimension");
  for (const auto& b : spec.bounds) {
    if (!(b.low < b.high)) throw ConfigError(fmt::format("invalid bound [{}, {}]", b.low, b.high));
  }
  if (spec.budget < 1) throw ConfigError("budget must be at least 1");
  Hyperparams params = info.defaults(dim);
  for (const auto& [key, value] : spec.hyperparams) {
    auto it = params.find(key);
    if (it == params.end()) {
      throw ConfigError(fmt::format("unknown hyperparameter '{}' for {}", key, spec.algorithm));
    }
    if (!std::isfinite(value)) throw ConfigError(fmt::format("hyperparameter '{}' must be finite", key));
    it->second = value;
  }
  const std::uint64_t needed = info.min_budget(params, dim);
  if (needed < 1) throw ConfigError(fmt::format("{}: population size must be positive", spec.algorithm));
  if (spec.budget < needed) {
    throw ConfigError(fmt::format("{}: budget {} is smaller than one population evaluation ({})",
                                  spec.algorithm, spec.budget, needed));
  }
  return params;
}

}  // namespace

void validate_spec(const OptimizerSpec& spec) { prepare(spec, registry().find(spec.algorithm)); }

RunResult minimize(const OptimizerSpec& spec, const Objective& objective, const TargetConfirmation& confirm) {
  const AlgorithmInfo info = registry().find(spec.algorithm);
  const Hyperparams params = prepare(spec, info);
  SearchContext ctx(spec, params, objective, confirm);
  RunResult result;
  try {
    info.run(ctx);
    result.termination = Termination::Stagnation;
  } catch (const StopSearch& stop) {
    result.termination = stop.reason;
  }
  result.fe_used = ctx.fe();
  result.trace = ctx.take_trace();
  return result;
}

namespace detail {

std::vector<std::size_t> argsort(const std::vector<double>& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return idx;
}

}  // namespace detail

}  // namespace vqe::optim
