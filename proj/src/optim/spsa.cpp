#include <cmath>

#include "algorithms.hpp"
#include "vqebench/errors.hpp"

namespace vqe::optim::detail {

// SPSA with Rademacher perturbations and gains
// a_k = a / (k + 1 + A)^alpha, c_k = c / (k + 1)^gamma, A = A_fraction * budget.
// Each iteration costs two FEs; the one or two FEs left at the end of the
// budget go to the current iterate, which is what SPSA returns.
void run_spsa(SearchContext& ctx) {
  const double a = ctx.param("a");
  const double c = ctx.param("c");
  const double alpha = ctx.param("alpha");
  const double gamma = ctx.param("gamma");
  const double stability = ctx.param("A_fraction") * static_cast<double>(ctx.budget());
  if (!(c > 0.0)) throw ConfigError("spsa: c must be positive");
  const std::size_t dim = ctx.dimension();

  std::vector<double> x = ctx.random_point();
  std::vector<double> delta(dim), plus(dim), minus(dim);
  for (std::uint64_t k = 0; ctx.fe() + 3 <= ctx.budget(); ++k) {
    const double kk = static_cast<double>(k);
    const double ak = a / std::pow(kk + 1.0 + stability, alpha);
    const double ck = c / std::pow(kk + 1.0, gamma);
    for (std::size_t j = 0; j < dim; ++j) {
      delta[j] = (ctx.rng().next_u64() >> 63) ? 1.0 : -1.0;
      plus[j] = x[j] + ck * delta[j];
      minus[j] = x[j] - ck * delta[j];
    }
    const double f_plus = ctx.evaluate(plus);
    const double f_minus = ctx.evaluate(minus);
    const double slope = (f_plus - f_minus) / (2.0 * ck);
    for (std::size_t j = 0; j < dim; ++j) x[j] -= ak * slope / delta[j];
    ctx.clip(x);
  }
  for (;;) ctx.evaluate(x);
}

}  // namespace vqe::optim::detail
