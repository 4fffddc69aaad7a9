#pragma once

#include <cstdint>
#include <functional>

#include "vqebench/optim.hpp"

namespace vqe::optim::detail {

enum class Schedule { Fast, Boltzmann, Cauchy };

/// Cooling law parameters shared by the three variants.
struct Cooling {
  double t_max;
  double t_min;
  double fast_rate;  // c in T_max * exp(-c k^{1/N})
  double dimension;
};

Cooling make_cooling(const SearchContext& ctx);

/// Temperature after `step` proposals (step >= 1).
double temperature(Schedule schedule, const Cooling& cooling, std::uint64_t step);

/// Called with each Metropolis decision in order.
using DecisionObserver = std::function<void(bool accepted)>;

/// Single-chain annealing. Visiting steps and acceptance draws use separate
/// substreams, so two schedules see the same acceptance uniforms.
void anneal(SearchContext& ctx, Schedule schedule, const DecisionObserver& observer = {});

}  // namespace vqe::optim::detail
