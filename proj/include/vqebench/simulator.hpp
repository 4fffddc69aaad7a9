#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "vqebench/pauli.hpp"

namespace vqe::sim {

using Complex = std::complex<double>;

enum class GateKind { RY, RZ, H, SDG, X, CZ, PAULI_EXP };

/// Index into a circuit's parameter vector.
struct ParamSlot {
  std::size_t index;
  bool operator==(const ParamSlot&) const = default;
};

/// Either a constant angle (radians) or a parameter slot.
using AngleSource = std::variant<double, ParamSlot>;

struct Gate {
  GateKind kind;
  std::vector<std::size_t> targets;
  AngleSource angle = 0.0;
  std::optional<pauli::PauliString> pauli;

  static Gate ry(std::size_t q, AngleSource a) { return {GateKind::RY, {q}, a, std::nullopt}; }
  static Gate rz(std::size_t q, AngleSource a) { return {GateKind::RZ, {q}, a, std::nullopt}; }
  static Gate h(std::size_t q) { return {GateKind::H, {q}, 0.0, std::nullopt}; }
  static Gate sdg(std::size_t q) { return {GateKind::SDG, {q}, 0.0, std::nullopt}; }
  static Gate x(std::size_t q) { return {GateKind::X, {q}, 0.0, std::nullopt}; }
  static Gate cz(std::size_t a, std::size_t b) { return {GateKind::CZ, {a, b}, 0.0, std::nullopt}; }
  /// exp(-i * angle * P); targets are the support of P in ascending order.
  static Gate pauli_exp(const pauli::PauliString& p, AngleSource a);

  bool is_parameterized() const noexcept { return std::holds_alternative<ParamSlot>(angle); }
};

/// Ordered gate list acting on |0...0>.
class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_params() const noexcept { return n_params_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  /// Validates target arity and range; parameter slots extend n_params.
  Circuit& add(Gate g);
  /// Reserves a fresh parameter slot.
  ParamSlot new_param() noexcept { return ParamSlot{n_params_++}; }

  /// Throws DomainError if some slot in [0, n_params) is never referenced.
  void check_slots_referenced() const;

  /// One gate per line: "RY q0 slot=3", "RY q0 fixed=0.7853981634",
  /// "CZ q0 q1", "EXP ZZ q0 q1 slot=17".
  std::string dump() const;

 private:
  std::size_t n_qubits_;
  std::size_t n_params_ = 0;
  std::vector<Gate> gates_;
};

/// `second` runs after `first`; its parameter slots are shifted past first's.
Circuit concatenate(const Circuit& first, const Circuit& second);

/// Dense statevector; qubit q is bit q of the amplitude index.
class Statevector {
 public:
  static constexpr std::size_t kMaxQubits = 30;

  explicit Statevector(std::size_t n_qubits);
  explicit Statevector(std::vector<Complex> amplitudes);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::span<Complex> amplitudes() noexcept { return amps_; }
  Complex operator[](std::size_t i) const noexcept { return amps_[i]; }

  double norm() const noexcept;
  std::vector<double> probabilities() const;

  void apply(const Gate& g, double angle);
  void apply_ry(std::size_t q, double angle) noexcept;
  void apply_rz(std::size_t q, double angle) noexcept;
  void apply_h(std::size_t q) noexcept;
  void apply_sdg(std::size_t q) noexcept;
  void apply_x(std::size_t q) noexcept;
  void apply_cz(std::size_t a, std::size_t b) noexcept;
  /// exp(-i * angle * P) applied exactly as cos(angle) - i sin(angle) P.
  void apply_pauli_exp(const pauli::PauliString& p, double angle);

 private:
  std::size_t n_qubits_;
  std::vector<Complex> amps_;
};

/// Runs `c` from |0...0>. Throws DimensionError if params.size() != n_params.
Statevector run_circuit(const Circuit& c, std::span<const double> params);

/// Runs `c` on a caller-supplied state (consumed and returned).
Statevector run_circuit(const Circuit& c, std::span<const double> params, Statevector state);

/// Dense unitary of `g` on its own targets; targets[0] is the low bit.
Eigen::MatrixXcd gate_unitary(const Gate& g, double angle);

/// Two-local ansatz for the Ising chain: fixed RY(pi/4) layer, then RY and RZ
/// layers, a linear CZ ladder, and a final RY and RZ layer (4n parameters).
Circuit build_ising_ansatz(std::size_t n_qubits);

/// Hamiltonian variational ansatz for a Hubbard ring on 2*sites qubits with
/// blocked spin layout (spin up on qubits [0, sites), spin down above).
///
/// A parameterized RY layer prepares the initial state. Each layer then adds
/// one shared-angle exponential per hopping bond and spin (both Jordan-Wigner
/// strings of the bond, which commute) and one Z_up Z_down exponential per
/// site.
Circuit build_hubbard_hva(std::size_t sites, std::size_t layers, bool periodic = true);

}  // namespace vqe::sim
