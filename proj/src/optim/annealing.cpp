#include "annealing.hpp"

#include <algorithm>
#include <cmath>

#include "algorithms.hpp"
#include "vqebench/errors.hpp"

namespace vqe::optim::detail {

Cooling make_cooling(const SearchContext& ctx) {
  Cooling c{};
  c.t_max = ctx.param("t_max");
  c.t_min = ctx.param("t_min");
  c.dimension = static_cast<double>(ctx.dimension());
  if (!(c.t_max > c.t_min && c.t_min > 0.0)) throw ConfigError("sa: need t_max > t_min > 0");
  const double horizon = ctx.param("L") * ctx.param("max_stay");
  if (!(horizon >= 1.0)) throw ConfigError("sa: L * max_stay must be at least 1");
  // Fast schedule reaches t_min after L * max_stay proposals.
  c.fast_rate = std::log(c.t_max / c.t_min) / std::pow(horizon, 1.0 / c.dimension);
  return c;
}

double temperature(Schedule schedule, const Cooling& cooling, std::uint64_t step) {
  const double k = static_cast<double>(step);
  switch (schedule) {
    case Schedule::Fast: return cooling.t_max * std::exp(-cooling.fast_rate * std::pow(k, 1.0 / cooling.dimension));
    case Schedule::Boltzmann: return cooling.t_max / std::log(1.0 + k);
    case Schedule::Cauchy: return cooling.t_max / (1.0 + k);
  }
  return cooling.t_min;
}

void anneal(SearchContext& ctx, Schedule schedule, const DecisionObserver& observer) {
  const Cooling cooling = make_cooling(ctx);
  const double learn_rate = ctx.param("learn_rate");
  const std::size_t stage_length = std::max<std::size_t>(1, ctx.count_param("L"));
  const std::size_t max_stay = ctx.count_param("max_stay");
  if (learn_rate < 0.0) throw ConfigError("sa: learn_rate must be non-negative");
  const std::size_t dim = ctx.dimension();

  Rng visit_rng = ctx.rng().split();
  Rng accept_rng = ctx.rng().split();

  std::vector<double> current = ctx.random_point();
  double current_f = ctx.evaluate(current);
  double best_f = current_f;
  std::size_t stay = 0;
  std::vector<double> proposal(dim), direction(dim);

  for (std::uint64_t step = 1;; ++step) {
    const double t = temperature(schedule, cooling, step);
    if (t < cooling.t_min) ctx.stagnate();
    switch (schedule) {
      case Schedule::Fast:
        // Ingber's very-fast-annealing generator, per coordinate.
        for (std::size_t j = 0; j < dim; ++j) {
          const double r = visit_rng.uniform(-1.0, 1.0);
          const double y = (r < 0 ? -1.0 : 1.0) * t * (std::pow(1.0 + 1.0 / t, std::abs(r)) - 1.0);
          proposal[j] = current[j] + learn_rate * y * ctx.range(j);
        }
        break;
      case Schedule::Boltzmann:
        for (std::size_t j = 0; j < dim; ++j) {
          const double sd = std::min(std::sqrt(t), ctx.range(j) / 3.0 / std::max(learn_rate, 1e-300));
          proposal[j] = current[j] + learn_rate * sd * visit_rng.normal();
        }
        break;
      case Schedule::Cauchy: {
        // Isotropic multivariate Cauchy: Gaussian direction over |N(0,1)|.
        double denom = std::abs(visit_rng.normal());
        while (denom == 0.0) denom = std::abs(visit_rng.normal());
        for (std::size_t j = 0; j < dim; ++j) direction[j] = visit_rng.normal();
        for (std::size_t j = 0; j < dim; ++j) proposal[j] = current[j] + learn_rate * t * direction[j] / denom;
        break;
      }
    }
    const double f = ctx.evaluate(proposal);
    const double u = accept_rng.uniform();
    const double delta = f - current_f;
    const bool accepted = delta <= 0.0 || u < std::exp(-delta / t);
    if (observer) observer(accepted);
    if (accepted) {
      current = proposal;
      current_f = f;
    }
    if (step % stage_length == 0) {
      const double best_now = ctx.trace().best_value;
      stay = best_now < best_f ? 0 : stay + 1;
      best_f = best_now;
      if (max_stay > 0 && stay > max_stay) ctx.stagnate();
    }
  }
}

void run_sa_fast(SearchContext& ctx) { anneal(ctx, Schedule::Fast); }
void run_sa_boltzmann(SearchContext& ctx) { anneal(ctx, Schedule::Boltzmann); }
void run_sa_cauchy(SearchContext& ctx) { anneal(ctx, Schedule::Cauchy); }

}  // namespace vqe::optim::detail
