#include "vqebench/simulator.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "vqebench/errors.hpp"

namespace vqe::sim {

namespace {

std::size_t expected_arity(GateKind kind) {
  switch (kind) {
    case GateKind::CZ: return 2;
    case GateKind::PAULI_EXP: return 0;  // checked against the string support
    default: return 1;
  }
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::SDG: return "SDG";
    case GateKind::X: return "X";
    case GateKind::CZ: return "CZ";
    case GateKind::PAULI_EXP: return "EXP";
  }
  return "?";
}

bool takes_angle(GateKind kind) {
  return kind == GateKind::RY || kind == GateKind::RZ || kind == GateKind::PAULI_EXP;
}

}  // namespace

Gate Gate::pauli_exp(const pauli::PauliString& p, AngleSource a) {
  Gate g{GateKind::PAULI_EXP, {}, a, p};
  for (std::size_t q = 0; q < p.n_qubits(); ++q) {
    if (p[q] != pauli::Label::I) g.targets.push_back(q);
  }
  return g;
}

Circuit::Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > Statevector::kMaxQubits) {
    throw DomainError(fmt::format("circuit width {} outside [1, {}]", n_qubits, Statevector::kMaxQubits));
  }
}

Circuit& Circuit::add(Gate g) {
  for (std::size_t q : g.targets) {
    if (q >= n_qubits_) {
      throw DimensionError(fmt::format("{} target q{} outside a {}-qubit circuit", gate_name(g.kind), q, n_qubits_));
    }
  }
  if (g.kind == GateKind::PAULI_EXP) {
    if (!g.pauli || g.pauli->n_qubits() != n_qubits_) {
      throw DimensionError("PAULI_EXP string width must match the circuit");
    }
    if (g.pauli->is_identity()) throw DomainError("PAULI_EXP of the identity is a global phase");
    std::uint64_t mask = 0;
    for (std::size_t q : g.targets) mask |= std::uint64_t{1} << q;
    if (mask != g.pauli->support() || g.targets.size() != g.pauli->weight()) {
      throw DomainError("PAULI_EXP targets must equal the string support");
    }
  } else if (g.targets.size() != expected_arity(g.kind)) {
    throw DomainError(fmt::format("{} expects {} target(s)", gate_name(g.kind), expected_arity(g.kind)));
  }
  if (g.kind == GateKind::CZ && g.targets[0] == g.targets[1]) {
    throw DomainError("CZ targets must be distinct");
  }
  if (const auto* slot = std::get_if<ParamSlot>(&g.angle)) {
    if (!takes_angle(g.kind)) throw DomainError(fmt::format("{} takes no angle", gate_name(g.kind)));
    if (slot->index >= n_params_) n_params_ = slot->index + 1;
  } else if (!std::isfinite(std::get<double>(g.angle))) {
    throw DomainError("fixed gate angle must be finite");
  }
  gates_.push_back(std::move(g));
  return *this;
}

void Circuit::check_slots_referenced() const {
  std::vector<bool> seen(n_params_, false);
  for (const auto& g : gates_) {
    if (const auto* slot = std::get_if<ParamSlot>(&g.angle)) seen[slot->index] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw DomainError(fmt::format("parameter slot {} is never used", i));
  }
}

std::string Circuit::dump() const {
  std::string out;
  for (const auto& g : gates_) {
    out += gate_name(g.kind);
    if (g.kind == GateKind::PAULI_EXP) {
      out += ' ';
      for (std::size_t q : g.targets) out += pauli::to_char((*g.pauli)[q]);
    }
    for (std::size_t q : g.targets) out += fmt::format(" q{}", q);
    if (takes_angle(g.kind)) {
      if (const auto* slot = std::get_if<ParamSlot>(&g.angle)) {
        out += fmt::format(" slot={}", slot->index);
      } else {
        out += fmt::format(" fixed={:.10f}", std::get<double>(g.angle));
      }
    }
    out += '\n';
  }
  return out;
}

Circuit concatenate(const Circuit& first, const Circuit& second) {
  if (first.n_qubits() != second.n_qubits()) throw DimensionError("cannot concatenate circuits of different widths");
  Circuit out = first;
  const std::size_t offset = first.n_params();
  for (Gate g : second.gates()) {
    if (auto* slot = std::get_if<ParamSlot>(&g.angle)) slot->index += offset;
    out.add(std::move(g));
  }
  return out;
}

Statevector::Statevector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) {
    throw DomainError(fmt::format("statevector width {} outside [1, {}]", n_qubits, kMaxQubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector::Statevector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 2 || !std::has_single_bit(amps_.size())) {
    throw DimensionError("amplitude count must be a power of two >= 2");
  }
  n_qubits_ = static_cast<std::size_t>(std::countr_zero(amps_.size()));
}

double Statevector::norm() const noexcept {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

void Statevector::apply(const Gate& g, double angle) {
  switch (g.kind) {
    case GateKind::RY: apply_ry(g.targets[0], angle); break;
    case GateKind::RZ: apply_rz(g.targets[0], angle); break;
    case GateKind::H: apply_h(g.targets[0]); break;
    case GateKind::SDG: apply_sdg(g.targets[0]); break;
    case GateKind::X: apply_x(g.targets[0]); break;
    case GateKind::CZ: apply_cz(g.targets[0], g.targets[1]); break;
    case GateKind::PAULI_EXP: apply_pauli_exp(*g.pauli, angle); break;
  }
}

namespace {

// Visits every index with `bit` clear, in blocks of contiguous indices.
template <typename F>
void for_each_low(std::size_t size, std::size_t bit, F&& f) {
  for (std::size_t hi = 0; hi < size; hi += 2 * bit) {
    for (std::size_t i = hi; i < hi + bit; ++i) f(i);
  }
}

// Complex product without the NaN/Inf recovery path of operator*.
inline Complex mul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

void Statevector::apply_ry(std::size_t q, double angle) noexcept {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const std::size_t bit = std::size_t{1} << q;
  for_each_low(amps_.size(), bit, [&](std::size_t i) {
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | bit];
    amps_[i] = c * a0 - s * a1;
    amps_[i | bit] = s * a0 + c * a1;
  });
}

void Statevector::apply_rz(std::size_t q, double angle) noexcept {
  const Complex lo = std::polar(1.0, -0.5 * angle);
  const Complex hi = std::polar(1.0, 0.5 * angle);
  const std::size_t bit = std::size_t{1} << q;
  for_each_low(amps_.size(), bit, [&](std::size_t i) {
    amps_[i] = mul(amps_[i], lo);
    amps_[i | bit] = mul(amps_[i | bit], hi);
  });
}

void Statevector::apply_h(std::size_t q) noexcept {
  const double r = std::numbers::sqrt2 / 2.0;
  const std::size_t bit = std::size_t{1} << q;
  for_each_low(amps_.size(), bit, [&](std::size_t i) {
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | bit];
    amps_[i] = r * (a0 + a1);
    amps_[i | bit] = r * (a0 - a1);
  });
}

void Statevector::apply_sdg(std::size_t q) noexcept {
  const std::size_t bit = std::size_t{1} << q;
  for_each_low(amps_.size(), bit, [&](std::size_t i) {
    const Complex a = amps_[i | bit];
    amps_[i | bit] = Complex{a.imag(), -a.real()};
  });
}

void Statevector::apply_x(std::size_t q) noexcept {
  const std::size_t bit = std::size_t{1} << q;
  for_each_low(amps_.size(), bit, [&](std::size_t i) { std::swap(amps_[i], amps_[i | bit]); });
}

void Statevector::apply_cz(std::size_t a, std::size_t b) noexcept {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void Statevector::apply_pauli_exp(const pauli::PauliString& p, double angle) {
  if (p.n_qubits() != n_qubits_) throw DimensionError("Pauli string width differs from the state");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const std::size_t x = p.x_mask();
  const std::size_t z = p.z_mask();
  // P|b> = i^{ny} (-1)^{|b & z|} |b ^ x>.
  Complex base{1.0, 0.0};
  for (int k = 0; k < p.y_count(); ++k) base *= Complex{0.0, 1.0};
  const Complex minus_i_sin = Complex{0.0, -s} * base;
  if (x == 0) {
    // Diagonal: each amplitude picks up exp(-i angle * eigenvalue).
    const Complex even = c + minus_i_sin;
    const Complex odd = c - minus_i_sin;
    for (std::size_t b = 0; b < amps_.size(); ++b) amps_[b] = mul(amps_[b], pauli::parity(b & z) ? odd : even);
    return;
  }
  // Pairs (b, b ^ x) with the pivot bit of b clear; their sign parities differ
  // by the parity of x & z.
  const std::size_t pivot = std::size_t{1} << (std::bit_width(x) - 1);
  const bool flip = pauli::parity(x & z);
  const double mr = minus_i_sin.real();
  const double mi = minus_i_sin.imag();
  // parity(b & z) = parity(block & z) ^ parity(offset & z); offsets below
  // the pivot share one table.
  std::vector<double> offset_sign(pivot);
  offset_sign[0] = 1.0;
  for (std::size_t i = 1; i < pivot; ++i) {
    const std::size_t low = i & (~i + 1);
    offset_sign[i] = (z & low) ? -offset_sign[i ^ low] : offset_sign[i ^ low];
  }
  auto* a = reinterpret_cast<double*>(amps_.data());
  for (std::size_t block = 0; block < amps_.size(); block += 2 * pivot) {
    const double block_sign = pauli::parity(block & z) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < pivot; ++i) {
      const std::size_t b = block + i;
      const std::size_t partner = b ^ x;
      const double br = a[2 * b], bi = a[2 * b + 1];
      const double pr = a[2 * partner], pi = a[2 * partner + 1];
      const double sign_b = block_sign * offset_sign[i];
      const double sign_p = flip ? -sign_b : sign_b;
      a[2 * b] = c * br + sign_p * (mr * pr - mi * pi);
      a[2 * b + 1] = c * bi + sign_p * (mr * pi + mi * pr);
      a[2 * partner] = c * pr + sign_b * (mr * br - mi * bi);
      a[2 * partner + 1] = c * pi + sign_b * (mr * bi + mi * br);
    }
  }
}

Statevector run_circuit(const Circuit& c, std::span<const double> params) {
  return run_circuit(c, params, Statevector(c.n_qubits()));
}

Statevector run_circuit(const Circuit& c, std::span<const double> params, Statevector state) {
  if (params.size() != c.n_params()) {
    throw DimensionError(fmt::format("circuit takes {} parameters, got {}", c.n_params(), params.size()));
  }
  if (state.n_qubits() != c.n_qubits()) throw DimensionError("state width differs from the circuit");
  for (const auto& g : c.gates()) {
    double angle = 0.0;
    if (const auto* slot = std::get_if<ParamSlot>(&g.angle)) {
      angle = params[slot->index];
    } else {
      angle = std::get<double>(g.angle);
    }
    state.apply(g, angle);
  }
  return state;
}

Eigen::MatrixXcd gate_unitary(const Gate& g, double angle) {
  using M = Eigen::MatrixXcd;
  const Complex i{0.0, 1.0};
  switch (g.kind) {
    case GateKind::RY: {
      M u(2, 2);
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      u << c, -s, s, c;
      return u;
    }
    case GateKind::RZ: {
      M u = M::Zero(2, 2);
      u(0, 0) = std::exp(-i * (angle / 2));
      u(1, 1) = std::exp(i * (angle / 2));
      return u;
    }
    case GateKind::H: {
      M u(2, 2);
      const double r = std::numbers::sqrt2 / 2.0;
      u << r, r, r, -r;
      return u;
    }
    case GateKind::SDG: {
      M u = M::Zero(2, 2);
      u(0, 0) = 1.0;
      u(1, 1) = -i;
      return u;
    }
    case GateKind::X: {
      M u(2, 2);
      u << 0, 1, 1, 0;
      return u;
    }
    case GateKind::CZ: {
      M u = M::Identity(4, 4);
      u(3, 3) = -1.0;
      return u;
    }
    case GateKind::PAULI_EXP: {
      // Restrict the string to its targets, then cos - i sin P.
      pauli::PauliString local(g.targets.size());
      for (std::size_t k = 0; k < g.targets.size(); ++k) local.set(k, (*g.pauli)[g.targets[k]]);
      const M p = pauli::dense_matrix(local);
      return std::cos(angle) * M::Identity(p.rows(), p.cols()) - i * std::sin(angle) * p;
    }
  }
  throw DomainError("unknown gate kind");
}

Circuit build_ising_ansatz(std::size_t n_qubits) {
  if (n_qubits < 2) throw DomainError("Ising ansatz needs at least 2 qubits");
  Circuit c(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) c.add(Gate::ry(q, std::numbers::pi / 4));
  auto rotation_layer = [&] {
    for (std::size_t q = 0; q < n_qubits; ++q) c.add(Gate::ry(q, c.new_param()));
    for (std::size_t q = 0; q < n_qubits; ++q) c.add(Gate::rz(q, c.new_param()));
  };
  rotation_layer();
  for (std::size_t q = 0; q + 1 < n_qubits; ++q) c.add(Gate::cz(q, q + 1));
  rotation_layer();
  return c;
}

namespace {

/// Jordan-Wigner strings X_a Z... X_b and Y_a Z... Y_b for a hopping bond.
std::pair<pauli::PauliString, pauli::PauliString> hopping_strings(std::size_t n_qubits, std::size_t a,
                                                                  std::size_t b) {
  if (a > b) std::swap(a, b);
  pauli::PauliString xx(n_qubits), yy(n_qubits);
  xx.set(a, pauli::Label::X);
  xx.set(b, pauli::Label::X);
  yy.set(a, pauli::Label::Y);
  yy.set(b, pauli::Label::Y);
  for (std::size_t q = a + 1; q < b; ++q) {
    xx.set(q, pauli::Label::Z);
    yy.set(q, pauli::Label::Z);
  }
  return {xx, yy};
}

}  // namespace

Circuit build_hubbard_hva(std::size_t sites, std::size_t layers, bool periodic) {
  if (sites < 2) throw DomainError("Hubbard ansatz needs at least 2 sites");
  const std::size_t n = 2 * sites;
  Circuit c(n);
  for (std::size_t q = 0; q < n; ++q) c.add(Gate::ry(q, c.new_param()));
  const std::size_t bonds = periodic ? sites : sites - 1;
  for (std::size_t layer = 0; layer < layers; ++layer) {
    for (std::size_t spin = 0; spin < 2; ++spin) {
      const std::size_t offset = spin * sites;
      for (std::size_t i = 0; i < bonds; ++i) {
        const auto [xx, yy] = hopping_strings(n, offset + i, offset + (i + 1) % sites);
        const ParamSlot slot = c.new_param();
        c.add(Gate::pauli_exp(xx, slot));
        c.add(Gate::pauli_exp(yy, slot));
      }
    }
    for (std::size_t i = 0; i < sites; ++i) {
      pauli::PauliString zz(n);
      zz.set(i, pauli::Label::Z);
      zz.set(i + sites, pauli::Label::Z);
      c.add(Gate::pauli_exp(zz, c.new_param()));
    }
  }
  return c;
}

}  // namespace vqe::sim
