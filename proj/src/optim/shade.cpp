#include <algorithm>
#include <cmath>

#include "algorithms.hpp"
#include "vqebench/errors.hpp"

namespace vqe::optim::detail {

namespace {

struct Individual {
  std::vector<double> x;
  double f;
};

// Weighted Lehmer mean sum(w s^2) / sum(w s).
double lehmer_mean(const std::vector<double>& s, const std::vector<double>& w) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    num += w[i] * s[i] * s[i];
    den += w[i] * s[i];
  }
  return den > 0.0 ? num / den : 0.0;
}

double arithmetic_mean(const std::vector<double>& s, const std::vector<double>& w) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    num += w[i] * s[i];
    den += w[i];
  }
  return den > 0.0 ? num / den : 0.0;
}

/// Cauchy(loc, 0.1) redrawn while non-positive, truncated to 1.
double sample_f(Rng& rng, double loc) {
  for (;;) {
    const double f = loc + 0.1 * rng.cauchy();
    if (f > 0.0) return std::min(f, 1.0);
  }
}

std::size_t pick_other(Rng& rng, std::size_t n, std::size_t a, std::size_t b = SIZE_MAX) {
  for (;;) {
    const std::size_t c = rng.below(n);
    if (c != a && c != b) return c;
  }
}

/// current-to-pbest/1 mutant with binomial crossover.
std::vector<double> make_trial(SearchContext& ctx, const std::vector<Individual>& pop,
                               const std::vector<std::vector<double>>& archive, const std::vector<std::size_t>& order,
                               std::size_t i, double p, double f, double cr) {
  Rng& rng = ctx.rng();
  const std::size_t np = pop.size();
  const std::size_t dim = ctx.dimension();
  const std::size_t top = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(p * static_cast<double>(np))));
  const std::size_t pbest = order[rng.below(std::min(top, np))];
  const std::size_t r1 = pick_other(rng, np, i);
  std::size_t r2 = 0;
  const std::vector<double>* x_r2 = nullptr;
  for (;;) {
    r2 = rng.below(np + archive.size());
    if (r2 == i || r2 == r1) continue;
    x_r2 = r2 < np ? &pop[r2].x : &archive[r2 - np];
    break;
  }
  const auto& xi = pop[i].x;
  std::vector<double> trial = xi;
  const std::size_t forced = rng.below(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (j == forced || rng.uniform() < cr) {
      trial[j] = xi[j] + f * (pop[pbest].x[j] - xi[j]) + f * (pop[r1].x[j] - (*x_r2)[j]);
    }
  }
  return trial;
}

std::vector<std::size_t> rank(const std::vector<Individual>& pop) {
  std::vector<double> f(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) f[i] = pop[i].f;
  return argsort(f);
}

void trim_archive(Rng& rng, std::vector<std::vector<double>>& archive, std::size_t cap) {
  while (archive.size() > cap) {
    archive[rng.below(archive.size())] = std::move(archive.back());
    archive.pop_back();
  }
}

}  // namespace

// Success-history based adaptive DE (SHADE).
void run_shade(SearchContext& ctx) {
  const std::size_t np = ctx.count_param("pop_size");
  const std::size_t h = ctx.count_param("memory_size");
  if (np < 4) throw ConfigError("shade: pop_size must be at least 4");
  if (h < 1) throw ConfigError("shade: memory_size must be positive");
  std::vector<double> mem_f(h, ctx.param("miu_f"));
  std::vector<double> mem_cr(h, ctx.param("miu_cr"));
  std::size_t slot = 0;

  std::vector<Individual> pop(np);
  for (auto& ind : pop) ind.x = ctx.random_point();
  for (auto& ind : pop) ind.f = ctx.evaluate(ind.x);
  std::vector<std::vector<double>> archive;
  const double p_min = 2.0 / static_cast<double>(np);

  for (;;) {
    const auto order = rank(pop);
    std::vector<double> s_f, s_cr, weights;
    std::vector<Individual> next = pop;
    for (std::size_t i = 0; i < np; ++i) {
      const std::size_t r = ctx.rng().below(h);
      const double cr = std::clamp(mem_cr[r] + 0.1 * ctx.rng().normal(), 0.0, 1.0);
      const double f = sample_f(ctx.rng(), mem_f[r]);
      const double p = ctx.rng().uniform(p_min, 0.2);
      std::vector<double> trial = make_trial(ctx, pop, archive, order, i, p, f, cr);
      const double value = ctx.evaluate(trial);
      if (value <= pop[i].f) {
        if (value < pop[i].f) {
          archive.push_back(pop[i].x);
          s_f.push_back(f);
          s_cr.push_back(cr);
          weights.push_back(pop[i].f - value);
        }
        next[i] = Individual{std::move(trial), value};
      }
    }
    pop = std::move(next);
    trim_archive(ctx.rng(), archive, np);
    if (!s_f.empty()) {
      mem_f[slot] = lehmer_mean(s_f, weights);
      mem_cr[slot] = arithmetic_mean(s_cr, weights);
      slot = (slot + 1) % h;
    }
  }
}

// iL-SHADE: SHADE with linear population size reduction, a memory slot fixed
// at 0.9, phase-dependent caps on F and CR and a growing pbest fraction.
void run_ilshade(SearchContext& ctx) {
  constexpr double kTerminal = -1.0;
  const std::size_t np_init = ctx.count_param("pop_size");
  const std::size_t np_min = ctx.count_param("min_pop_size");
  const std::size_t h = ctx.count_param("memory_size");
  if (np_min < 4 || np_init < np_min) throw ConfigError("ilshade: need pop_size >= min_pop_size >= 4");
  if (h < 2) throw ConfigError("ilshade: memory_size must be at least 2");
  std::vector<double> mem_f(h, 0.5);
  std::vector<double> mem_cr(h, 0.8);
  mem_f[h - 1] = 0.9;
  mem_cr[h - 1] = 0.9;
  std::size_t slot = 0;
  const double max_fe = static_cast<double>(ctx.budget());

  std::vector<Individual> pop(np_init);
  for (auto& ind : pop) ind.x = ctx.random_point();
  for (auto& ind : pop) ind.f = ctx.evaluate(ind.x);
  std::vector<std::vector<double>> archive;

  for (;;) {
    const std::size_t np = pop.size();
    const auto order = rank(pop);
    const double progress = ctx.progress();
    const double p = 0.1 + 0.1 * progress;
    std::vector<double> s_f, s_cr, weights;
    std::vector<Individual> next = pop;
    for (std::size_t i = 0; i < np; ++i) {
      const std::size_t r = ctx.rng().below(h);
      double cr = mem_cr[r] == kTerminal ? 0.0 : std::clamp(mem_cr[r] + 0.1 * ctx.rng().normal(), 0.0, 1.0);
      double f = sample_f(ctx.rng(), mem_f[r]);
      if (progress < 0.25) {
        cr = std::max(cr, 0.5);
        f = std::min(f, 0.7);
      } else if (progress < 0.5) {
        cr = std::max(cr, 0.25);
        f = std::min(f, 0.8);
      } else if (progress < 0.75) {
        f = std::min(f, 0.9);
      }
      std::vector<double> trial = make_trial(ctx, pop, archive, order, i, p, f, cr);
      const double value = ctx.evaluate(trial);
      if (value <= pop[i].f) {
        if (value < pop[i].f) {
          archive.push_back(pop[i].x);
          s_f.push_back(f);
          s_cr.push_back(cr);
          weights.push_back(pop[i].f - value);
        }
        next[i] = Individual{std::move(trial), value};
      }
    }
    pop = std::move(next);
    if (!s_f.empty()) {
      const double max_cr = *std::max_element(s_cr.begin(), s_cr.end());
      if (mem_cr[slot] == kTerminal || max_cr == 0.0) {
        mem_cr[slot] = kTerminal;
      } else {
        mem_cr[slot] = 0.5 * (lehmer_mean(s_cr, weights) + mem_cr[slot]);
      }
      mem_f[slot] = 0.5 * (lehmer_mean(s_f, weights) + mem_f[slot]);
      slot = (slot + 1) % (h - 1);
    }
    // Linear population size reduction driven by consumed FEs.
    const double planned = std::round((static_cast<double>(np_min) - static_cast<double>(np_init)) / max_fe *
                                          static_cast<double>(ctx.fe()) +
                                      static_cast<double>(np_init));
    const std::size_t target = std::max(np_min, static_cast<std::size_t>(planned));
    if (target < pop.size()) {
      const auto keep = rank(pop);
      std::vector<Individual> reduced;
      reduced.reserve(target);
      for (std::size_t k = 0; k < target; ++k) reduced.push_back(pop[keep[k]]);
      pop = std::move(reduced);
    }
    trim_archive(ctx.rng(), archive, pop.size());
  }
}

}  // namespace vqe::optim::detail
