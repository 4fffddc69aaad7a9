#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "vqebench/pauli.hpp"

namespace vqe::models {

/// Open-chain field-free Ising Hamiltonian -sum_i Z_i Z_{i+1} (n - 1 terms).
pauli::PauliSum ising_hamiltonian(std::size_t n_qubits);

/// Jordan-Wigner image of the annihilation operator on `mode`.
pauli::PauliSum annihilation(std::size_t mode, std::size_t n_qubits);
pauli::PauliSum creation(std::size_t mode, std::size_t n_qubits);

/// -t (c+_a c_b + c+_b c_a) with a = offset + i, b = offset + j, simplified.
///
/// The register is split into two equal spin blocks; `spin_block_offset`
/// must be 0 or n_qubits / 2 and both site indices must lie in the block.
pauli::PauliSum jw_hopping_term(std::size_t i, std::size_t j, std::size_t spin_block_offset,
                                std::size_t n_qubits, double t);

struct HubbardSpec {
  std::size_t sites = 6;
  double t = 1.0;
  double U = 1.0;
  bool periodic = true;
};

/// Hubbard chain or ring on 2 * sites qubits, spin up on [0, sites).
/// Hopping for both spins plus U * sum_i n_up n_down; simplified and tagged.
pauli::PauliSum hubbard_hamiltonian(const HubbardSpec& spec);

/// Total particle number sum_q (I - Z_q) / 2.
pauli::PauliSum number_operator(std::size_t n_qubits);

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::size_t k = 0;

  double ground() const { return eigenvalues.front(); }
  /// Count of eigenvalues within `tol` of the minimum.
  std::size_t ground_degeneracy(double tol = 1e-9) const;
};

inline constexpr std::size_t kMaxSpectrumQubits = 12;

/// k smallest eigenvalues of `h`. The matrix is split into the connected
/// blocks of its nonzero pattern and each block goes to LAPACK ?syevr/?heevr.
Spectrum exact_spectrum(const pauli::PauliSum& h, std::size_t k);

/// Lowest eigenvalues published for the extended 6-site Hubbard model. The
/// extension is not specified, so this list is reported next to the computed
/// spectrum but is not expected to match it.
inline constexpr std::array<double, 10> kPublishedHubbardSpectrum = {
    -18.0, -17.0, -16.0, -15.0, -15.0, -15.0, -15.0, -15.0, -15.0, -15.0};

}  // namespace vqe::models
