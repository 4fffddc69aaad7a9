#include <gtest/gtest.h>

#include <fstream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "vqebench/errors.hpp"
#include "vqebench/estimator.hpp"
#include "vqebench/models.hpp"
#include "vqebench/random.hpp"
#include "vqebench/simulator.hpp"

using namespace vqe;
using namespace vqe::sim;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd to_eigen(const Statevector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t i = 0; i < s.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

double distance(const Statevector& s, const Eigen::VectorXcd& v) { return (to_eigen(s) - v).cwiseAbs().maxCoeff(); }

Statevector random_state(Rng& rng, std::size_t n) {
  std::vector<Complex> amps(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {rng.normal(), rng.normal()};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return Statevector(std::move(amps));
}

// Local matrices built from first principles, independent of gate_unitary.
oracle::Matrix local_matrix(const Gate& g, double angle) {
  const Complex i{0.0, 1.0};
  oracle::Matrix m;
  switch (g.kind) {
    case GateKind::RY:
      m.resize(2, 2);
      m << std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2), std::cos(angle / 2);
      return m;
    case GateKind::RZ:
      m.resize(2, 2);
      m << std::exp(-i * angle / 2.0), 0, 0, std::exp(i * angle / 2.0);
      return m;
    case GateKind::H:
      return (oracle::pauli2('X') + oracle::pauli2('Z')) / std::sqrt(2.0);
    case GateKind::SDG:
      m.resize(2, 2);
      m << 1, 0, 0, -i;
      return m;
    case GateKind::X:
      return oracle::pauli2('X');
    case GateKind::CZ:
      m = oracle::Matrix::Identity(4, 4);
      m(3, 3) = -1;
      return m;
    case GateKind::PAULI_EXP: {
      std::string text;
      for (auto it = g.targets.rbegin(); it != g.targets.rend(); ++it) text += pauli::to_char((*g.pauli)[*it]);
      return oracle::expm_hermitian(oracle::string_matrix(text), angle);
    }
  }
  return m;
}

Gate random_gate(Rng& rng, std::size_t n) {
  const std::size_t a = rng.below(n);
  std::size_t b = rng.below(n - 1);
  if (b >= a) ++b;
  const double angle = rng.uniform(-kPi, kPi);
  switch (rng.below(7)) {
    case 0: return Gate::ry(a, angle);
    case 1: return Gate::rz(a, angle);
    case 2: return Gate::h(a);
    case 3: return Gate::sdg(a);
    case 4: return Gate::x(a);
    case 5: return Gate::cz(a, b);
    default: {
      pauli::PauliString p(n);
      while (p.is_identity()) {
        for (std::size_t q = 0; q < n; ++q) p.set(q, static_cast<pauli::Label>(rng.below(4)));
      }
      return Gate::pauli_exp(p, angle);
    }
  }
}

std::vector<double> random_params(Rng& rng, std::size_t count) {
  std::vector<double> theta(count);
  for (double& v : theta) v = rng.uniform(-kPi, kPi);
  return theta;
}

}  // namespace

TEST(Statevector, StartsInZeroState) {
  Statevector s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_EQ(s[0], Complex(1.0, 0.0));
  EXPECT_DOUBLE_EQ(s.norm(), 1.0);
  EXPECT_THROW(Statevector(31), DomainError);
  EXPECT_THROW(Statevector(std::vector<Complex>(3)), DimensionError);
}

TEST(Gates, SingleQubitExamples) {
  Statevector s(1);
  s.apply_ry(0, kPi);
  EXPECT_NEAR(std::abs(s[1] - Complex(1.0, 0.0)), 0.0, 1e-15);
  Statevector plus(1);
  plus.apply_h(0);
  EXPECT_NEAR(plus[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(plus[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
  Statevector r(1);
  r.apply_rz(0, kPi);
  EXPECT_NEAR(std::abs(r[0] - Complex(0.0, -1.0)), 0.0, 1e-15);
}

TEST(Gates, UnitaryExamples) {
  EXPECT_LT((gate_unitary(Gate::ry(0, 0.0), 0.0) - oracle::Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  oracle::Matrix rz(2, 2);
  rz << Complex(0, -1), 0, 0, Complex(0, 1);
  EXPECT_LT((gate_unitary(Gate::rz(0, kPi), kPi) - rz).cwiseAbs().maxCoeff(), 1e-15);
  const auto xx = Gate::pauli_exp(pauli::PauliString::parse("XX"), kPi / 2);
  const oracle::Matrix expected = Complex(0, -1) * oracle::string_matrix("XX");
  EXPECT_LT((gate_unitary(xx, kPi / 2) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Gates, CzOnlyFlipsBothSetAmplitude) {
  Statevector s(2);
  s.apply_h(0);
  s.apply_h(1);
  s.apply_cz(0, 1);
  EXPECT_NEAR(s[3].real(), -0.5, 1e-15);
  EXPECT_NEAR(s[1].real(), 0.5, 1e-15);
}

TEST(Gates, UnitaryMatchesFirstPrinciples) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Gate g = random_gate(rng, 4);
    const double angle = std::get<double>(g.angle);
    EXPECT_LT((gate_unitary(g, angle) - local_matrix(g, angle)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Gates, KernelsMatchDenseOracleOnRandomStates) {
  Rng rng(21);
  const std::size_t n = 6;
  for (int trial = 0; trial < 50; ++trial) {
    const Gate g = random_gate(rng, n);
    const double angle = std::get<double>(g.angle);
    Statevector s = random_state(rng, n);
    const Eigen::VectorXcd expected = oracle::embed(local_matrix(g, angle), g.targets, n) * to_eigen(s);
    s.apply(g, angle);
    EXPECT_LT(distance(s, expected), 1e-12) << "gate kind " << static_cast<int>(g.kind);
  }
}

TEST(Gates, PauliExpHighWeightStrings) {
  Rng rng(33);
  for (const char* text : {"XYZXYZ", "YYYYYY", "ZZZZZZ", "XIIIIX", "IYIIZI", "ZIXIIY"}) {
    const auto p = pauli::PauliString::parse(text);
    const double angle = rng.uniform(-kPi, kPi);
    Statevector s = random_state(rng, 6);
    const Eigen::VectorXcd expected = oracle::expm_hermitian(oracle::string_matrix(text), angle) * to_eigen(s);
    s.apply_pauli_exp(p, angle);
    EXPECT_LT(distance(s, expected), 1e-12) << text;
  }
}

TEST(Gates, PauliExpRejectsWidthMismatch) {
  Statevector s(3);
  EXPECT_THROW(s.apply_pauli_exp(pauli::PauliString::parse("XX"), 0.1), DimensionError);
}

TEST(Circuit, ValidatesTargets) {
  Circuit c(2);
  EXPECT_THROW(c.add(Gate::ry(2, 0.1)), DimensionError);
  EXPECT_THROW(c.add(Gate::cz(1, 1)), DomainError);
  EXPECT_THROW(c.add(Gate{GateKind::H, {0}, ParamSlot{0}, std::nullopt}), DomainError);
}

TEST(Circuit, ParameterCounts) {
  for (std::size_t n = 2; n <= 12; ++n) EXPECT_EQ(build_ising_ansatz(n).n_params(), 4 * n);
  EXPECT_EQ(build_hubbard_hva(6, 10).n_params(), 192u);
  EXPECT_NO_THROW(build_hubbard_hva(6, 10).check_slots_referenced());
  Circuit c(1);
  c.new_param();
  EXPECT_THROW(c.check_slots_referenced(), DomainError);
}

TEST(Circuit, RunRejectsWrongParameterCount) {
  const auto c = build_ising_ansatz(3);
  std::vector<double> theta(11);
  EXPECT_THROW(run_circuit(c, theta), DimensionError);
}

TEST(Circuit, IsingAnsatzMatchesGoldenDump) {
  std::ifstream in(std::string(VQEBENCH_TEST_DATA) + "/ising_ansatz_3q.txt");
  ASSERT_TRUE(in.good());
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(build_ising_ansatz(3).dump(), golden.str());
}

TEST(Circuit, IsingAnsatzMatchesDenseProduct) {
  Rng rng(4);
  const auto c = build_ising_ansatz(4);
  const auto theta = random_params(rng, c.n_params());
  Eigen::VectorXcd v = oracle::basis_zero(4);
  for (const auto& g : c.gates()) {
    const double angle = g.is_parameterized() ? theta[std::get<ParamSlot>(g.angle).index] : std::get<double>(g.angle);
    v = oracle::embed(local_matrix(g, angle), g.targets, 4) * v;
  }
  EXPECT_LT(distance(run_circuit(c, theta), v), 1e-12);
}

TEST(Circuit, HubbardHvaMatchesDenseProduct) {
  Rng rng(8);
  const auto c = build_hubbard_hva(2, 1);
  const auto theta = random_params(rng, c.n_params());
  Eigen::VectorXcd v = oracle::basis_zero(4);
  for (const auto& g : c.gates()) {
    const double angle = g.is_parameterized() ? theta[std::get<ParamSlot>(g.angle).index] : std::get<double>(g.angle);
    v = oracle::embed(local_matrix(g, angle), g.targets, 4) * v;
  }
  EXPECT_LT(distance(run_circuit(c, theta), v), 1e-12);
}

TEST(Circuit, RandomCircuitsPreserveNorm) {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    Circuit c(n);
    for (int k = 0; k < 20; ++k) {
      Gate g = random_gate(rng, n);
      if (g.kind == GateKind::RY || g.kind == GateKind::RZ || g.kind == GateKind::PAULI_EXP) g.angle = c.new_param();
      c.add(g);
    }
    const auto s = run_circuit(c, random_params(rng, c.n_params()));
    EXPECT_NEAR(s.norm(), 1.0, 1e-10);
  }
}

TEST(Circuit, ConcatenateShiftsSlots) {
  const auto a = build_ising_ansatz(3);
  const auto b = build_ising_ansatz(3);
  const auto ab = concatenate(a, b);
  EXPECT_EQ(ab.n_params(), a.n_params() + b.n_params());
  Rng rng(12);
  const auto ta = random_params(rng, a.n_params());
  const auto tb = random_params(rng, b.n_params());
  std::vector<double> joint(ta);
  joint.insert(joint.end(), tb.begin(), tb.end());
  const auto sequential = run_circuit(b, tb, run_circuit(a, ta));
  EXPECT_EQ(distance(run_circuit(ab, joint), to_eigen(sequential)), 0.0);
  EXPECT_THROW(concatenate(Circuit(2), Circuit(3)), DimensionError);
}

TEST(Circuit, ParameterShiftMatchesFiniteDifference) {
  Rng rng(31);
  const auto c = build_ising_ansatz(3);
  const auto h = models::ising_hamiltonian(3);
  const auto energy = [&](const std::vector<double>& t) { return estimator::exact_expectation(run_circuit(c, t), h); };
  const auto theta = random_params(rng, c.n_params());
  for (std::size_t k = 0; k < c.n_params(); ++k) {
    auto plus = theta, minus = theta;
    plus[k] += kPi / 2;
    minus[k] -= kPi / 2;
    const double shift = (energy(plus) - energy(minus)) / 2.0;
    auto fp = theta, fm = theta;
    fp[k] += 1e-5;
    fm[k] -= 1e-5;
    const double fd = (energy(fp) - energy(fm)) / 2e-5;
    EXPECT_NEAR(shift, fd, 1e-5) << "slot " << k;
  }
}
