#include <algorithm>
#include <cmath>

#include "algorithms.hpp"
#include "vqebench/errors.hpp"

namespace vqe::optim::detail {

namespace {

enum class Base { Best, Random };
enum class Crossover { Binomial, Exponential };

/// r distinct indices from [0, n) excluding `skip`.
std::vector<std::size_t> pick_distinct(Rng& rng, std::size_t n, std::size_t r, std::size_t skip) {
  std::vector<std::size_t> out;
  while (out.size() < r) {
    const std::size_t c = rng.below(n);
    if (c == skip || std::find(out.begin(), out.end(), c) != out.end()) continue;
    out.push_back(c);
  }
  return out;
}

// Classic DE with immediate replacement: a trial that is no worse than its
// target overwrites it before the next trial is built.
void run_de(SearchContext& ctx, Base base, Crossover crossover) {
  const std::size_t np = ctx.count_param("pop_size");
  const std::size_t dim = ctx.dimension();
  const double f = ctx.param("F");
  const double cr = ctx.param("CR");
  if (np < 5) throw ConfigError("de: pop_size must be at least 5");

  std::vector<std::vector<double>> pop(np);
  std::vector<double> fit(np);
  for (std::size_t i = 0; i < np; ++i) pop[i] = ctx.random_point();
  for (std::size_t i = 0; i < np; ++i) fit[i] = ctx.evaluate(pop[i]);
  std::size_t best = static_cast<std::size_t>(std::min_element(fit.begin(), fit.end()) - fit.begin());

  std::vector<double> trial(dim);
  for (;;) {
    for (std::size_t i = 0; i < np; ++i) {
      const auto r = pick_distinct(ctx.rng(), np, 3, i);
      const std::vector<double>& anchor = base == Base::Best ? pop[best] : pop[r[2]];
      trial = pop[i];
      if (crossover == Crossover::Binomial) {
        const std::size_t forced = ctx.rng().below(dim);
        for (std::size_t j = 0; j < dim; ++j) {
          if (j == forced || ctx.rng().uniform() < cr) trial[j] = anchor[j] + f * (pop[r[0]][j] - pop[r[1]][j]);
        }
      } else {
        std::size_t j = ctx.rng().below(dim);
        std::size_t copied = 0;
        do {
          trial[j] = anchor[j] + f * (pop[r[0]][j] - pop[r[1]][j]);
          j = (j + 1) % dim;
          ++copied;
        } while (copied < dim && ctx.rng().uniform() < cr);
      }
      const double value = ctx.evaluate(trial);
      if (value <= fit[i]) {
        pop[i] = trial;
        fit[i] = value;
        if (value <= fit[best]) best = i;
      }
    }
  }
}

}  // namespace

void run_de_best1bin(SearchContext& ctx) { run_de(ctx, Base::Best, Crossover::Binomial); }
void run_de_best1exp(SearchContext& ctx) { run_de(ctx, Base::Best, Crossover::Exponential); }
void run_de_rand1(SearchContext& ctx) { run_de(ctx, Base::Random, Crossover::Binomial); }

}  // namespace vqe::optim::detail
