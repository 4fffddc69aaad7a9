#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vqebench/errors.hpp"
#include "vqebench/estimator.hpp"
#include "vqebench/models.hpp"
#include "vqebench/random.hpp"
#include "vqebench/simulator.hpp"

using namespace vqe;
using namespace vqe::models;

namespace {

std::vector<std::string> strings_of(const pauli::PauliSum& s) {
  std::vector<std::string> out;
  for (const auto& t : s.terms()) out.push_back(t.string.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> dense_eigenvalues(const pauli::PauliSum& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(pauli::dense_matrix(h), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd v = eig.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

// Single-particle ring energies -2t cos(2 pi k / L), each spin filling its
// negative modes.
double ring_band_oracle(std::size_t sites, double t) {
  double e = 0.0;
  for (std::size_t k = 0; k < sites; ++k) {
    e += std::min(0.0, -2.0 * t * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(sites)));
  }
  return 2.0 * e;
}

}  // namespace

TEST(Ising, ThreeQubitTerms) {
  const auto h = ising_hamiltonian(3);
  EXPECT_EQ(strings_of(h), (std::vector<std::string>{"IZZ", "ZZI"}));
  for (const auto& t : h.terms()) EXPECT_EQ(t.coefficient, pauli::Complex(-1.0, 0.0));
  EXPECT_TRUE(h.is_hamiltonian());
  EXPECT_THROW(ising_hamiltonian(1), DomainError);
}

TEST(Ising, TermCount) {
  for (std::size_t n = 2; n <= 12; ++n) EXPECT_EQ(ising_hamiltonian(n).size(), n - 1);
}

TEST(Ising, FiveQubitGroundFromDiagonal) {
  const auto m = pauli::dense_matrix(ising_hamiltonian(5));
  const Eigen::VectorXd diag = m.diagonal().real();
  EXPECT_EQ(diag.minCoeff(), -4.0);
  EXPECT_EQ((diag.array() == -4.0).count(), 2);
  const auto s = exact_spectrum(ising_hamiltonian(5), 4);
  EXPECT_EQ(s.ground(), -4.0);
  EXPECT_EQ(s.ground_degeneracy(), 2u);
}

TEST(JordanWigner, AdjacentHopping) {
  const auto h = jw_hopping_term(0, 1, 0, 4, 1.0);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(strings_of(h), (std::vector<std::string>{"IIXX", "IIYY"}));
  for (const auto& t : h.terms()) EXPECT_EQ(t.coefficient, pauli::Complex(-0.5, 0.0));
  EXPECT_TRUE(jw_hopping_term(0, 1, 0, 4, 0.0).empty());
}

TEST(JordanWigner, WrapBondCarriesZString) {
  const auto h = jw_hopping_term(5, 0, 6, 12, 1.0);
  EXPECT_EQ(strings_of(h), (std::vector<std::string>{"XZZZZXIIIIII", "YZZZZYIIIIII"}));
}

TEST(JordanWigner, MatchesHandExpandedStrings) {
  // (-t/2)(X Z..Z X + Y Z..Y Y) on qubits offset+i .. offset+j.
  const oracle::Matrix expected = oracle::string_matrix("XZXIII") + oracle::string_matrix("YZYIII");
  const auto actual = pauli::dense_matrix(jw_hopping_term(0, 2, 3, 6, 0.7));
  EXPECT_LT((actual - (-0.35) * expected).cwiseAbs().maxCoeff(), 1e-15);
  const auto reversed = pauli::dense_matrix(jw_hopping_term(2, 0, 3, 6, 0.7));
  EXPECT_LT((reversed - actual).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(JordanWigner, LadderOperatorsAnticommute) {
  const std::size_t n = 3;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const auto a = pauli::dense_matrix(annihilation(p, n));
      const auto c = pauli::dense_matrix(creation(q, n));
      const oracle::Matrix expected = oracle::Matrix::Identity(8, 8) * (p == q ? 1.0 : 0.0);
      EXPECT_LT((a * c + c * a - expected).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(JordanWigner, RejectsCrossBlockIndices) {
  EXPECT_THROW(jw_hopping_term(0, 4, 0, 8, 1.0), DomainError);
  EXPECT_THROW(jw_hopping_term(0, 1, 1, 8, 1.0), DomainError);
  EXPECT_THROW(jw_hopping_term(1, 1, 0, 8, 1.0), DomainError);
}

TEST(Hubbard, NonIdentityTermCount) {
  for (std::size_t sites = 2; sites <= 6; ++sites) {
    for (bool periodic : {true, false}) {
      const auto h = hubbard_hamiltonian({sites, 1.0, 1.0, periodic});
      std::size_t non_identity = 0;
      for (const auto& t : h.terms()) non_identity += t.string.is_identity() ? 0 : 1;
      // A two-site ring has its wrap bond coincide with the open bond.
      const std::size_t bonds = periodic && sites > 2 ? sites : sites - 1;
      if (periodic && sites == 2) continue;
      EXPECT_EQ(non_identity, 4 * bonds + 3 * sites) << sites << (periodic ? " ring" : " chain");
    }
  }
}

TEST(Hubbard, IdentityCoefficient) {
  EXPECT_NEAR(hubbard_hamiltonian({6, 1.0, 1.0, true}).identity_coefficient().real(), 1.5, 1e-15);
}

TEST(Hubbard, HermitianAndNumberConserving) {
  for (std::size_t sites : {2, 3}) {
    const auto h = hubbard_hamiltonian({sites, 1.0, 1.0, true});
    for (const auto& t : h.terms()) EXPECT_LE(std::abs(t.coefficient.imag()), 1e-12);
    const auto m = pauli::dense_matrix(h);
    const auto n = pauli::dense_matrix(number_operator(2 * sites));
    EXPECT_LE((m * n - n * m).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Hubbard, SpinSwapSymmetry) {
  const std::size_t sites = 3, n = 6;
  const auto m = pauli::dense_matrix(hubbard_hamiltonian({sites, 1.0, 1.0, true}));
  const std::size_t dim = std::size_t{1} << n, low = (std::size_t{1} << sites) - 1;
  auto swap = [&](std::size_t b) { return ((b & low) << sites) | (b >> sites); };
  double worst = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const auto diff = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) -
                        m(static_cast<Eigen::Index>(swap(r)), static_cast<Eigen::Index>(swap(c)));
      worst = std::max(worst, std::abs(diff));
    }
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Hubbard, FreeFermionRing) {
  EXPECT_NEAR(ring_band_oracle(6, 1.0), -8.0, 1e-12);
  const double e0 = exact_spectrum(hubbard_hamiltonian({6, 1.0, 0.0, true}), 1).ground();
  EXPECT_NEAR(e0, -8.0, 1e-9);
  for (std::size_t sites : {3, 4, 5}) {
    const double e = exact_spectrum(hubbard_hamiltonian({sites, 1.0, 0.0, true}), 1).ground();
    EXPECT_NEAR(e, ring_band_oracle(sites, 1.0), 1e-9) << sites;
  }
}

TEST(Hubbard, AtomicLimit) {
  EXPECT_NEAR(exact_spectrum(hubbard_hamiltonian({6, 0.0, 1.0, true}), 1).ground(), 0.0, 1e-12);
}

TEST(Spectrum, Examples) {
  const auto z = exact_spectrum(pauli::PauliSum::parse(1, {"1*Z"}), 2);
  EXPECT_EQ(z.eigenvalues, (std::vector<double>{-1.0, 1.0}));
  EXPECT_EQ(exact_spectrum(ising_hamiltonian(3), 1).eigenvalues, std::vector<double>{-2.0});
  EXPECT_EQ(exact_spectrum(pauli::PauliSum::parse(1, {"1*X"}), 5).eigenvalues.size(), 2u);
  EXPECT_THROW(exact_spectrum(ising_hamiltonian(13), 1), CapacityError);
  EXPECT_THROW(exact_spectrum(ising_hamiltonian(3), 0), DomainError);
}

TEST(Spectrum, MatchesDenseSolverOnRandomSums) {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    pauli::PauliSum h(n);
    for (int k = 0; k < 8; ++k) {
      pauli::PauliString p(n);
      for (std::size_t q = 0; q < n; ++q) p.set(q, static_cast<pauli::Label>(rng.below(4)));
      h.add(rng.uniform(-1.0, 1.0), p);
    }
    h = pauli::simplify(h);
    if (h.empty()) continue;
    const auto reference = dense_eigenvalues(h);
    const auto s = exact_spectrum(h, 6);
    ASSERT_EQ(s.eigenvalues.size(), std::min<std::size_t>(6, reference.size()));
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) EXPECT_NEAR(s.eigenvalues[i], reference[i], 1e-10);
  }
}

TEST(Spectrum, HubbardLowSpectrumMatchesDenseSolver) {
  const auto h = hubbard_hamiltonian({4, 1.0, 1.0, true});
  const auto reference = dense_eigenvalues(h);
  const auto s = exact_spectrum(h, 10);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(s.eigenvalues[i], reference[i], 1e-10);
}

TEST(Spectrum, VariationalBoundOnIsingAnsatz) {
  Rng rng(43);
  const auto c = sim::build_ising_ansatz(3);
  const auto h = ising_hamiltonian(3);
  const double e0 = exact_spectrum(h, 1).ground();
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> theta(c.n_params());
    for (double& v : theta) v = rng.uniform(-2 * std::numbers::pi, 2 * std::numbers::pi);
    EXPECT_GE(estimator::exact_expectation(sim::run_circuit(c, theta), h), e0 - 1e-9);
  }
}
