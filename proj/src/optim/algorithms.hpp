#pragma once

#include <vector>

#include "vqebench/optim.hpp"

// Built-in algorithm bodies; registered in registry.cpp.
namespace vqe::optim::detail {

void run_cmaes(SearchContext& ctx);
void run_de_best1bin(SearchContext& ctx);
void run_de_best1exp(SearchContext& ctx);
void run_de_rand1(SearchContext& ctx);
void run_shade(SearchContext& ctx);
void run_ilshade(SearchContext& ctx);
void run_ga(SearchContext& ctx);
void run_hs(SearchContext& ctx);
void run_sa_fast(SearchContext& ctx);
void run_sa_boltzmann(SearchContext& ctx);
void run_sa_cauchy(SearchContext& ctx);
void run_isoma(SearchContext& ctx);
void run_pso(SearchContext& ctx);
void run_sos(SearchContext& ctx);
void run_spsa(SearchContext& ctx);

/// Index order that sorts `values` ascending (stable).
std::vector<std::size_t> argsort(const std::vector<double>& values);

}  // namespace vqe::optim::detail
