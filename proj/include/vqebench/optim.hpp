#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vqebench/random.hpp"

namespace vqe::optim {

enum class Termination { Budget, Target, Stagnation };

std::string_view to_string(Termination t) noexcept;

struct Bound {
  double low;
  double high;
};

/// Stop once a value <= value + tolerance is seen (and confirmed).
struct Target {
  double value;
  double tolerance;
};

using Hyperparams = std::map<std::string, double, std::less<>>;

struct OptimizerSpec {
  std::string algorithm;
  Hyperparams hyperparams;
  std::vector<Bound> bounds;
  std::uint64_t budget = 1;
  std::optional<Target> target;
  std::uint64_t seed = 0;
  /// Stop when the best value has not improved by more than 1e-8 over
  /// 20 * dimension consecutive FEs.
  bool stop_on_stagnation = false;

  std::size_t dimension() const noexcept { return bounds.size(); }
};

struct TracePoint {
  std::uint64_t fe;
  double value;
  bool is_new_best;
};

/// Every evaluated point in FE order, with the running best.
struct Trace {
  std::vector<TracePoint> points;
  std::vector<double> best_params;
  double best_value = std::numeric_limits<double>::infinity();
  std::uint64_t best_fe = 0;

  /// Best value among points with fe <= `fe` (+inf before the first point).
  double best_at(std::uint64_t fe) const noexcept;
};

struct RunResult {
  Trace trace;
  Termination termination = Termination::Budget;
  std::uint64_t fe_used = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Consulted when a value meets the target; returning false keeps searching.
using TargetConfirmation = std::function<bool(std::span<const double> params, double value)>;

/// Evaluation gateway handed to algorithm implementations.
///
/// evaluate() clips the point into the bounds, counts the FE, records the
/// trace and throws an internal stop signal once the budget, a confirmed
/// target, or stagnation ends the run; algorithms never catch it.
class SearchContext {
 public:
  SearchContext(const OptimizerSpec& spec, const Hyperparams& params, const Objective& objective,
                const TargetConfirmation& confirm);

  std::size_t dimension() const noexcept { return bounds_.size(); }
  const std::vector<Bound>& bounds() const noexcept { return bounds_; }
  double range(std::size_t i) const noexcept { return bounds_[i].high - bounds_[i].low; }

  /// Hyperparameter value (defaults merged with overrides).
  double param(std::string_view key) const;
  std::size_t count_param(std::string_view key) const;

  Rng& rng() noexcept { return rng_; }

  std::uint64_t budget() const noexcept { return budget_; }
  std::uint64_t fe() const noexcept { return fe_; }
  /// Fraction of the budget consumed, in [0, 1].
  double progress() const noexcept { return static_cast<double>(fe_) / static_cast<double>(budget_); }

  void clip(std::span<double> x) const noexcept;
  std::vector<double> random_point();

  /// Clips `x` in place and returns its objective value.
  double evaluate(std::vector<double>& x);

  /// Ends the run with Termination::Stagnation.
  [[noreturn]] void stagnate() const;

  const Trace& trace() const noexcept { return trace_; }
  Trace take_trace() noexcept { return std::move(trace_); }

 private:
  std::vector<Bound> bounds_;
  const Hyperparams& params_;
  const Objective& objective_;
  const TargetConfirmation& confirm_;
  std::optional<Target> target_;
  bool stop_on_stagnation_;
  std::uint64_t budget_;
  std::uint64_t fe_ = 0;
  std::uint64_t last_improvement_fe_ = 0;
  double stagnation_reference_ = std::numeric_limits<double>::infinity();
  Rng rng_;
  Trace trace_;
};

/// Plug-in description of an optimizer.
struct AlgorithmInfo {
  std::string name;
  std::function<Hyperparams(std::size_t dimension)> defaults;
  /// FEs needed for one population evaluation.
  std::function<std::uint64_t(const Hyperparams&, std::size_t dimension)> min_budget;
  std::function<void(SearchContext&)> run;
};

/// Adds (or replaces) an algorithm in the process-wide registry.
void register_algorithm(AlgorithmInfo info);

/// Registered algorithm identifiers, sorted.
std::vector<std::string> algorithms();

/// Defaults for `algorithm` with bounds [-2*pi, 2*pi] per dimension.
/// Throws UnsupportedError for unknown identifiers.
OptimizerSpec default_spec(std::string_view algorithm, std::size_t dimension);

/// Performs every check minimize() does before its first evaluation.
void validate_spec(const OptimizerSpec& spec);

/// Runs the algorithm until the budget is spent, a confirmed target is hit
/// or the algorithm stagnates. Throws UnsupportedError for unknown
/// algorithms and ConfigError for invalid specs (including a budget smaller
/// than one population evaluation or unknown hyperparameter keys).
RunResult minimize(const OptimizerSpec& spec, const Objective& objective,
                   const TargetConfirmation& confirm = {});

}  // namespace vqe::optim
