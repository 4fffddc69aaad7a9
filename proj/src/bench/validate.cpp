#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "vqebench/bench.hpp"
#include "vqebench/random.hpp"

namespace vqe::bench {

double band_filling_energy(std::size_t sites, double t, bool periodic) {
  Eigen::MatrixXd hop = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sites), static_cast<Eigen::Index>(sites));
  const std::size_t bonds = periodic ? sites : sites - 1;
  for (std::size_t i = 0; i < bonds; ++i) {
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>((i + 1) % sites);
    hop(a, b) -= t;
    hop(b, a) -= t;
  }
  const Eigen::VectorXd bands = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hop).eigenvalues();
  double energy = 0.0;
  for (double e : bands) energy += std::min(e, 0.0);
  return 2.0 * energy;
}

namespace {

CheckResult check(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> run_validation() {
  std::vector<CheckResult> out;

  for (std::size_t n = 2; n <= 8; ++n) {
    const auto spectrum = models::exact_spectrum(models::ising_hamiltonian(n), 4);
    const double expected = -static_cast<double>(n - 1);
    out.push_back(check(fmt::format("ising-{}q ground energy and degeneracy", n),
                        spectrum.ground() == expected && spectrum.ground_degeneracy() == 2,
                        fmt::format("E0 = {}, degeneracy {}", spectrum.ground(), spectrum.ground_degeneracy())));
  }

  for (std::size_t sites : {2, 3, 4}) {
    models::HubbardSpec spec{sites, 1.0, 0.0, true};
    const double e0 = models::exact_spectrum(models::hubbard_hamiltonian(spec), 1).ground();
    const double oracle = band_filling_energy(sites, 1.0, true);
    out.push_back(check(fmt::format("hubbard-{}s free-fermion ground energy", sites), std::abs(e0 - oracle) <= 1e-9,
                        fmt::format("E0 = {}, band filling {}", e0, oracle)));
  }
  {
    models::HubbardSpec spec{4, 0.0, 1.0, true};
    const double e0 = models::exact_spectrum(models::hubbard_hamiltonian(spec), 1).ground();
    out.push_back(check("hubbard-4s atomic limit ground energy", std::abs(e0) <= 1e-12, fmt::format("E0 = {}", e0)));
  }
  {
    models::HubbardSpec spec{3, 1.0, 2.0, true};
    const auto h = pauli::dense_matrix(models::hubbard_hamiltonian(spec));
    const auto n = pauli::dense_matrix(models::number_operator(6));
    const double residual = (h * n - n * h).cwiseAbs().maxCoeff();
    out.push_back(check("hubbard-3s conserves particle number", residual <= 1e-10,
                        fmt::format("max |[H, N]| = {}", residual)));
  }

  Rng rng(2024);
  {
    const auto circuit = sim::build_ising_ansatz(4);
    const auto h = models::ising_hamiltonian(4);
    estimator::EnergyObjective exact(circuit, h, estimator::ShotConfig::exact());
    bool equal = true;
    double lowest = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> theta(circuit.n_params());
      for (double& v : theta) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
      const double value = exact.evaluate(theta);
      equal = equal && value == estimator::exact_expectation(sim::run_circuit(circuit, theta), h);
      lowest = std::min(lowest, value);
    }
    out.push_back(check("exact mode equals exact_expectation", equal, "200 random parameter vectors"));
    out.push_back(check("variational bound on ising-4q", lowest >= -3.0 - 1e-9, fmt::format("lowest {}", lowest)));
  }
  {
    sim::Statevector zero(5);
    const auto h = models::ising_hamiltonian(5);
    const auto e = estimator::sampled_expectation(zero, h, estimator::ShotConfig::sampled(64, 7));
    out.push_back(check("sampled energy of |00000> is deterministic", e.value == -4.0 && e.std_error == 0.0,
                        fmt::format("value {}, std error {}", e.value, e.std_error)));
  }
  {
    const auto grid = checkpoint_grid(100000);
    out.push_back(check("checkpoint grid", grid.size() == 18 && grid[16] == 65536 && grid.back() == 100000,
                        fmt::format("{} checkpoints", grid.size())));
  }
  return out;
}

}  // namespace vqe::bench
