#include <algorithm>
#include <cmath>
#include <limits>

#include "algorithms.hpp"
#include "vqebench/errors.hpp"

namespace vqe::optim::detail {

namespace {

std::size_t argmin(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::size_t pick_other(Rng& rng, std::size_t n, std::size_t skip) {
  for (;;) {
    const std::size_t c = rng.below(n);
    if (c != skip) return c;
  }
}

struct Population {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

Population initial_population(SearchContext& ctx, std::size_t size) {
  Population p;
  p.x.resize(size);
  p.f.resize(size);
  for (auto& xi : p.x) xi = ctx.random_point();
  for (std::size_t i = 0; i < size; ++i) p.f[i] = ctx.evaluate(p.x[i]);
  return p;
}

}  // namespace

// Real-coded generational GA: tournament selection, BLX-alpha crossover,
// per-gene Gaussian mutation, one elite carried over.
void run_ga(SearchContext& ctx) {
  const std::size_t np = ctx.count_param("pop_size");
  const std::size_t tournament = ctx.count_param("tournament");
  const double pc = ctx.param("pc");
  const double pm = ctx.param("pm");
  const double alpha = ctx.param("blend_alpha");
  const double scale = ctx.param("mutation_scale");
  if (np < 2) throw ConfigError("ga: pop_size must be at least 2");
  if (tournament < 1) throw ConfigError("ga: tournament size must be positive");
  const std::size_t dim = ctx.dimension();
  Rng& rng = ctx.rng();

  Population pop = initial_population(ctx, np);
  auto select = [&] {
    std::size_t winner = rng.below(np);
    for (std::size_t k = 1; k < tournament; ++k) {
      const std::size_t c = rng.below(np);
      if (pop.f[c] < pop.f[winner]) winner = c;
    }
    return winner;
  };

  for (;;) {
    const std::size_t elite = argmin(pop.f);
    Population next;
    next.x.push_back(pop.x[elite]);
    next.f.push_back(pop.f[elite]);
    while (next.x.size() < np) {
      std::vector<double> a = pop.x[select()];
      std::vector<double> b = pop.x[select()];
      if (rng.uniform() < pc) {
        for (std::size_t j = 0; j < dim; ++j) {
          const double lo = std::min(a[j], b[j]);
          const double hi = std::max(a[j], b[j]);
          const double spread = alpha * (hi - lo);
          a[j] = rng.uniform(lo - spread, hi + spread);
          b[j] = rng.uniform(lo - spread, hi + spread);
        }
      }
      for (auto* child : {&a, &b}) {
        if (next.x.size() >= np) break;
        for (std::size_t j = 0; j < dim; ++j) {
          if (rng.uniform() < pm) (*child)[j] += scale * ctx.range(j) * rng.normal();
        }
        const double value = ctx.evaluate(*child);
        next.x.push_back(std::move(*child));
        next.f.push_back(value);
      }
    }
    pop = std::move(next);
  }
}

// Harmony search: memory consideration, pitch adjustment within a fixed
// bandwidth, random selection otherwise; the worst harmony is replaced.
void run_hs(SearchContext& ctx) {
  const std::size_t size = ctx.count_param("memory_size");
  const double hmcr = ctx.param("c_r");
  const double par = ctx.param("pa_r");
  const double bandwidth = ctx.param("bandwidth");
  if (size < 1) throw ConfigError("hs: memory_size must be positive");
  const std::size_t dim = ctx.dimension();
  Rng& rng = ctx.rng();

  Population memory = initial_population(ctx, size);
  std::vector<double> harmony(dim);
  for (;;) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (rng.uniform() < hmcr) {
        harmony[j] = memory.x[rng.below(size)][j];
        if (rng.uniform() < par) harmony[j] += bandwidth * ctx.range(j) * rng.uniform(-1.0, 1.0);
      } else {
        harmony[j] = rng.uniform(ctx.bounds()[j].low, ctx.bounds()[j].high);
      }
    }
    const double value = ctx.evaluate(harmony);
    const std::size_t worst = argmax(memory.f);
    if (value < memory.f[worst]) {
      memory.x[worst] = harmony;
      memory.f[worst] = value;
    }
  }
}

// Global-best PSO with inertia weight and velocity clamping.
void run_pso(SearchContext& ctx) {
  const std::size_t np = ctx.count_param("pop_size");
  const double w = ctx.param("w");
  const double c1 = ctx.param("c1");
  const double c2 = ctx.param("c2");
  const double v_frac = ctx.param("v_max");
  if (np < 1) throw ConfigError("pso: pop_size must be positive");
  const std::size_t dim = ctx.dimension();
  Rng& rng = ctx.rng();

  std::vector<double> v_max(dim);
  for (std::size_t j = 0; j < dim; ++j) v_max[j] = v_frac * ctx.range(j);
  Population swarm;
  swarm.x.resize(np);
  std::vector<std::vector<double>> velocity(np, std::vector<double>(dim));
  for (std::size_t i = 0; i < np; ++i) {
    swarm.x[i] = ctx.random_point();
    for (std::size_t j = 0; j < dim; ++j) velocity[i][j] = rng.uniform(-v_max[j], v_max[j]);
  }
  swarm.f.resize(np);
  for (std::size_t i = 0; i < np; ++i) swarm.f[i] = ctx.evaluate(swarm.x[i]);
  Population personal = swarm;
  std::size_t leader = argmin(personal.f);

  for (;;) {
    for (std::size_t i = 0; i < np; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        double v = w * velocity[i][j] + c1 * r1 * (personal.x[i][j] - swarm.x[i][j]) +
                   c2 * r2 * (personal.x[leader][j] - swarm.x[i][j]);
        velocity[i][j] = std::clamp(v, -v_max[j], v_max[j]);
        swarm.x[i][j] += velocity[i][j];
      }
      swarm.f[i] = ctx.evaluate(swarm.x[i]);
      if (swarm.f[i] < personal.f[i]) {
        personal.x[i] = swarm.x[i];
        personal.f[i] = swarm.f[i];
        if (personal.f[i] < personal.f[leader]) leader = i;
      }
    }
  }
}

// Symbiotic organisms search: mutualism, commensalism and parasitism phases
// per organism, each with greedy replacement.
void run_sos(SearchContext& ctx) {
  const std::size_t np = ctx.count_param("pop_size");
  if (np < 2) throw ConfigError("sos: pop_size must be at least 2");
  const std::size_t dim = ctx.dimension();
  Rng& rng = ctx.rng();

  Population eco = initial_population(ctx, np);
  std::vector<double> a(dim), b(dim);
  auto offer = [&](std::size_t k, std::vector<double>& candidate, double value) {
    if (value < eco.f[k]) {
      eco.x[k] = candidate;
      eco.f[k] = value;
    }
  };

  for (;;) {
    for (std::size_t i = 0; i < np; ++i) {
      // Mutualism.
      std::size_t best = argmin(eco.f);
      std::size_t j = pick_other(rng, np, i);
      const double bf1 = 1.0 + static_cast<double>(rng.below(2));
      const double bf2 = 1.0 + static_cast<double>(rng.below(2));
      for (std::size_t d = 0; d < dim; ++d) {
        const double mutual = 0.5 * (eco.x[i][d] + eco.x[j][d]);
        a[d] = eco.x[i][d] + rng.uniform() * (eco.x[best][d] - mutual * bf1);
        b[d] = eco.x[j][d] + rng.uniform() * (eco.x[best][d] - mutual * bf2);
      }
      const double fa = ctx.evaluate(a);
      const double fb = ctx.evaluate(b);
      offer(i, a, fa);
      offer(j, b, fb);

      // Commensalism.
      best = argmin(eco.f);
      j = pick_other(rng, np, i);
      for (std::size_t d = 0; d < dim; ++d) {
        a[d] = eco.x[i][d] + rng.uniform(-1.0, 1.0) * (eco.x[best][d] - eco.x[j][d]);
      }
      offer(i, a, ctx.evaluate(a));

      // Parasitism: a copy of i with a random subset of dimensions redrawn.
      j = pick_other(rng, np, i);
      a = eco.x[i];
      const std::size_t changed = 1 + rng.below(dim);
      std::vector<std::size_t> dims(dim);
      for (std::size_t d = 0; d < dim; ++d) dims[d] = d;
      for (std::size_t k = 0; k < changed; ++k) {
        std::swap(dims[k], dims[k + rng.below(dim - k)]);
        const std::size_t d = dims[k];
        a[d] = rng.uniform(ctx.bounds()[d].low, ctx.bounds()[d].high);
      }
      offer(j, a, ctx.evaluate(a));
    }
  }
}

// iSOMA migration loop: each round samples m individuals, moves the best n
// of them towards a leader (best of s random individuals) along a
// perturbation-masked path of n_jump steps and keeps the best position.
void run_isoma(SearchContext& ctx) {
  const std::size_t np = ctx.count_param("pop_size");
  const std::size_t m = ctx.count_param("m");
  const std::size_t n = ctx.count_param("n");
  const std::size_t s = ctx.count_param("s");
  const std::size_t jumps = ctx.count_param("n_jump");
  const double step = ctx.param("step");
  const double prt = ctx.param("prt");
  if (np < 2 || m < 1 || m > np || n < 1 || n > m || s < 1 || s > np || jumps < 1) {
    throw ConfigError("isoma: need 1 <= n <= m <= pop_size, 1 <= s <= pop_size, n_jump >= 1");
  }
  const std::size_t dim = ctx.dimension();
  Rng& rng = ctx.rng();

  Population pop = initial_population(ctx, np);
  std::vector<std::size_t> ids(np);
  std::vector<double> position(dim), best_position(dim);
  std::vector<char> mask(dim);

  auto sample_ids = [&](std::size_t count) {
    for (std::size_t k = 0; k < np; ++k) ids[k] = k;
    for (std::size_t k = 0; k < count; ++k) std::swap(ids[k], ids[k + rng.below(np - k)]);
    return std::vector<std::size_t>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(count));
  };

  for (;;) {
    std::vector<std::size_t> pool = sample_ids(m);
    std::stable_sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) { return pop.f[a] < pop.f[b]; });
    pool.resize(n);
    for (std::size_t migrant : pool) {
      const auto candidates = sample_ids(s);
      std::size_t leader = candidates.front();
      for (std::size_t c : candidates) {
        if (pop.f[c] < pop.f[leader]) leader = c;
      }
      if (leader == migrant) continue;
      double best_value = std::numeric_limits<double>::infinity();
      for (std::size_t k = 1; k <= jumps; ++k) {
        bool any = false;
        for (std::size_t d = 0; d < dim; ++d) {
          mask[d] = rng.uniform() < prt;
          any = any || mask[d];
        }
        if (!any) mask[rng.below(dim)] = 1;
        const double t = step * static_cast<double>(k);
        for (std::size_t d = 0; d < dim; ++d) {
          const double move = mask[d] ? (pop.x[leader][d] - pop.x[migrant][d]) * t : 0.0;
          position[d] = pop.x[migrant][d] + move;
        }
        const double value = ctx.evaluate(position);
        if (value < best_value) {
          best_value = value;
          best_position = position;
        }
      }
      if (best_value < pop.f[migrant]) {
        pop.x[migrant] = best_position;
        pop.f[migrant] = best_value;
      }
    }
  }
}

}  // namespace vqe::optim::detail
