#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vqebench/pauli.hpp"
#include "vqebench/random.hpp"
#include "vqebench/simulator.hpp"

namespace vqe::estimator {

/// Measurement budget per commuting group; an empty `shots` means exact.
struct ShotConfig {
  static constexpr std::uint64_t kMaxShots = 1'000'000'000;

  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;

  static ShotConfig exact(std::uint64_t seed = 0) { return {std::nullopt, seed}; }
  static ShotConfig sampled(std::uint64_t shots, std::uint64_t seed);

  bool is_exact() const noexcept { return !shots.has_value(); }
};

/// Sampled energy and its standard error estimated from the same shots.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// sum_k w_k <psi|P_k|psi> without sampling. Throws DimensionError on a
/// width mismatch and DomainError if the imaginary residue exceeds 1e-10.
double exact_expectation(const sim::Statevector& state, const pauli::PauliSum& h);

/// Shot-sampled expectation over precomputed qubit-wise commuting groups.
///
/// Each non-constant group is rotated into the computational basis (H on X
/// positions, S-dagger then H on Y positions) and receives the full `shots`
/// budget. Groups draw from `rng` in order.
Estimate sampled_expectation(const sim::Statevector& state,
                             const std::vector<pauli::CommutingGroup>& groups, std::uint64_t shots,
                             Rng& rng);

/// Convenience overload: groups `h` and seeds a fresh stream from cfg.seed.
Estimate sampled_expectation(const sim::Statevector& state, const pauli::PauliSum& h,
                             const ShotConfig& cfg);

/// The VQE cost function E(theta) with function-evaluation accounting.
///
/// Every evaluate() call is one FE. Sampling noise for evaluation number k
/// comes from a substream keyed by hash(seed, k), so a run is reproducible
/// point by point and independent of how many draws earlier calls used.
class EnergyObjective {
 public:
  EnergyObjective(sim::Circuit circuit, pauli::PauliSum hamiltonian, ShotConfig shots);

  std::size_t n_params() const noexcept { return circuit_.n_params(); }
  const sim::Circuit& circuit() const noexcept { return circuit_; }
  const pauli::PauliSum& hamiltonian() const noexcept { return hamiltonian_; }
  const std::vector<pauli::CommutingGroup>& groups() const noexcept { return groups_; }
  const ShotConfig& shot_config() const noexcept { return shots_; }

  /// One FE: runs the circuit and returns the (sampled or exact) energy.
  double evaluate(std::span<const double> params);
  Estimate evaluate_with_error(std::span<const double> params);

  /// Noise-free energy for verification; not counted as an FE.
  double exact_energy(std::span<const double> params);

  std::uint64_t fe_count() const noexcept { return fe_count_; }
  std::uint64_t exact_evaluations() const noexcept { return exact_evaluations_; }

  /// Restarts FE accounting, which also rewinds the noise substreams.
  void reset() noexcept {
    fe_count_ = 0;
    exact_evaluations_ = 0;
  }

 private:
  sim::Circuit circuit_;
  pauli::PauliSum hamiltonian_;
  std::vector<pauli::CommutingGroup> groups_;
  ShotConfig shots_;
  std::uint64_t fe_count_ = 0;
  std::uint64_t exact_evaluations_ = 0;
};

}  // namespace vqe::estimator
