#include "vqebench/estimator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "vqebench/errors.hpp"

namespace vqe::estimator {

using pauli::Complex;

ShotConfig ShotConfig::sampled(std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1 || shots > kMaxShots) {
    throw DomainError(fmt::format("shots must lie in [1, {}], got {}", kMaxShots, shots));
  }
  return {shots, seed};
}

double exact_expectation(const sim::Statevector& state, const pauli::PauliSum& h) {
  if (state.n_qubits() != h.n_qubits()) {
    throw DimensionError(fmt::format("state has {} qubits, observable {}", state.n_qubits(), h.n_qubits()));
  }
  const auto amps = state.amplitudes();
  Complex total{0.0, 0.0};
  double scale = 1.0;
  for (const auto& t : h.terms()) {
    const std::size_t x = t.string.x_mask();
    const std::size_t z = t.string.z_mask();
    Complex acc{0.0, 0.0};
    for (std::size_t b = 0; b < amps.size(); ++b) {
      const Complex v = std::conj(amps[b ^ x]) * amps[b];
      if (pauli::parity(b & z)) {
        acc -= v;
      } else {
        acc += v;
      }
    }
    Complex phase{1.0, 0.0};
    for (int k = 0; k < t.string.y_count(); ++k) phase *= Complex{0.0, 1.0};
    total += t.coefficient * phase * acc;
    scale += std::abs(t.coefficient);
  }
  if (std::abs(total.imag()) > 1e-10 * scale) {
    throw DomainError(fmt::format("expectation has imaginary part {}; observable is not Hermitian", total.imag()));
  }
  return total.real();
}

namespace {

void rotate_to_basis(sim::Statevector& state, const pauli::PauliString& basis) {
  for (std::size_t q = 0; q < basis.n_qubits(); ++q) {
    switch (basis[q]) {
      case pauli::Label::X: state.apply_h(q); break;
      case pauli::Label::Y:
        state.apply_sdg(q);
        state.apply_h(q);
        break;
      default: break;
    }
  }
}

}  // namespace

Estimate sampled_expectation(const sim::Statevector& state,
                             const std::vector<pauli::CommutingGroup>& groups, std::uint64_t shots,
                             Rng& rng) {
  if (shots < 1) throw DomainError("sampled expectation needs at least one shot");
  Estimate out;
  double variance = 0.0;
  std::vector<double> cdf(state.dimension());
  std::vector<std::uint32_t> counts(state.dimension());
  for (const auto& group : groups) {
    if (group.terms.n_qubits() != state.n_qubits()) {
      throw DimensionError("measurement group width differs from the state");
    }
    if (group.constant) {
      out.value += group.terms.identity_coefficient().real();
      continue;
    }
    sim::Statevector rotated = state;
    rotate_to_basis(rotated, group.basis);
    const auto amps = rotated.amplitudes();
    double running = 0.0;
    for (std::size_t b = 0; b < amps.size(); ++b) {
      running += std::norm(amps[b]);
      cdf[b] = running;
    }
    std::fill(counts.begin(), counts.end(), 0U);
    for (std::uint64_t s = 0; s < shots; ++s) {
      const double u = rng.uniform() * running;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    // Each shot yields v(b) = sum_k w_k (-1)^{|b & supp_k|}.
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t b = 0; b < counts.size(); ++b) {
      if (counts[b] == 0) continue;
      double v = 0.0;
      for (const auto& t : group.terms.terms()) {
        v += pauli::parity(b & t.string.support()) ? -t.coefficient.real() : t.coefficient.real();
      }
      sum += counts[b] * v;
      sum_sq += counts[b] * v * v;
    }
    const double n = static_cast<double>(shots);
    const double mean = sum / n;
    out.value += mean;
    if (shots > 1) variance += std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) / n;
  }
  out.std_error = std::sqrt(variance);
  return out;
}

Estimate sampled_expectation(const sim::Statevector& state, const pauli::PauliSum& h,
                             const ShotConfig& cfg) {
  if (cfg.is_exact()) return Estimate{exact_expectation(state, h), 0.0};
  Rng rng(cfg.seed);
  return sampled_expectation(state, pauli::qubitwise_commuting_groups(h), *cfg.shots, rng);
}

EnergyObjective::EnergyObjective(sim::Circuit circuit, pauli::PauliSum hamiltonian, ShotConfig shots)
    : circuit_(std::move(circuit)),
      hamiltonian_(std::move(hamiltonian)),
      groups_(hamiltonian_.empty() ? std::vector<pauli::CommutingGroup>{}
                                   : pauli::qubitwise_commuting_groups(hamiltonian_)),
      shots_(shots) {
  if (circuit_.n_qubits() != hamiltonian_.n_qubits()) {
    throw DimensionError(fmt::format("circuit has {} qubits, Hamiltonian {}", circuit_.n_qubits(),
                                     hamiltonian_.n_qubits()));
  }
  for (const auto& t : hamiltonian_.terms()) {
    if (t.coefficient.imag() != 0.0) throw DomainError("energy objective needs real coefficients");
  }
}

double EnergyObjective::evaluate(std::span<const double> params) { return evaluate_with_error(params).value; }

Estimate EnergyObjective::evaluate_with_error(std::span<const double> params) {
  const sim::Statevector state = sim::run_circuit(circuit_, params);
  const std::uint64_t index = fe_count_++;
  if (shots_.is_exact()) return Estimate{exact_expectation(state, hamiltonian_), 0.0};
  Rng rng(hash_words({shots_.seed, index}));
  return sampled_expectation(state, groups_, *shots_.shots, rng);
}

double EnergyObjective::exact_energy(std::span<const double> params) {
  ++exact_evaluations_;
  return exact_expectation(sim::run_circuit(circuit_, params), hamiltonian_);
}

}  // namespace vqe::estimator
