#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "algorithms.hpp"
#include "vqebench/errors.hpp"

namespace vqe::optim::detail {

// (mu/mu_w, lambda)-CMA-ES with rank-one and rank-mu covariance updates and
// cumulative step-size adaptation. Samples are repaired by clipping and the
// repaired points drive the update.
void run_cmaes(SearchContext& ctx) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;

  const auto n = static_cast<Eigen::Index>(ctx.dimension());
  const double nd = static_cast<double>(n);
  const std::size_t lambda = ctx.count_param("pop_size");
  if (lambda < 2) throw ConfigError("cmaes: pop_size must be at least 2");
  double sigma = ctx.param("sigma");
  if (!(sigma > 0.0)) throw ConfigError("cmaes: sigma must be positive");

  const std::size_t mu = lambda / 2;
  VectorXd weights(static_cast<Eigen::Index>(mu));
  for (std::size_t i = 0; i < mu; ++i) {
    weights(static_cast<Eigen::Index>(i)) = std::log((static_cast<double>(lambda) + 1.0) / 2.0) - std::log(static_cast<double>(i) + 1.0);
  }
  weights /= weights.sum();
  const double mueff = 1.0 / weights.squaredNorm();

  const double cc = (4.0 + mueff / nd) / (nd + 4.0 + 2.0 * mueff / nd);
  const double cs = (mueff + 2.0) / (nd + mueff + 5.0);
  const double c1 = 2.0 / ((nd + 1.3) * (nd + 1.3) + mueff);
  const double cmu = std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((nd + 2.0) * (nd + 2.0) + mueff));
  const double damps = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (nd + 1.0)) - 1.0) + cs;
  const double chi_n = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));

  double max_range = 0.0;
  for (std::size_t i = 0; i < ctx.dimension(); ++i) max_range = std::max(max_range, ctx.range(i));

  const std::vector<double> start = ctx.random_point();
  VectorXd mean = Eigen::Map<const VectorXd>(start.data(), n);
  VectorXd pc = VectorXd::Zero(n);
  VectorXd ps = VectorXd::Zero(n);
  MatrixXd basis = MatrixXd::Identity(n, n);
  VectorXd scales = VectorXd::Ones(n);
  MatrixXd cov = MatrixXd::Identity(n, n);
  MatrixXd inv_sqrt = MatrixXd::Identity(n, n);
  std::uint64_t evals_since_decomposition = 0;
  const double decomposition_gap = static_cast<double>(lambda) / (c1 + cmu) / nd / 10.0;

  std::vector<std::vector<double>> xs(lambda, std::vector<double>(ctx.dimension()));
  std::vector<double> fitness(lambda);
  MatrixXd steps(n, static_cast<Eigen::Index>(lambda));
  VectorXd z(n);

  for (std::uint64_t generation = 1;; ++generation) {
    for (std::size_t k = 0; k < lambda; ++k) {
      for (Eigen::Index i = 0; i < n; ++i) z(i) = ctx.rng().normal();
      const VectorXd x = mean + sigma * (basis * scales.cwiseProduct(z));
      for (Eigen::Index i = 0; i < n; ++i) xs[k][static_cast<std::size_t>(i)] = x(i);
      fitness[k] = ctx.evaluate(xs[k]);
      steps.col(static_cast<Eigen::Index>(k)) = (Eigen::Map<const VectorXd>(xs[k].data(), n) - mean) / sigma;
    }
    evals_since_decomposition += lambda;

    const auto order = argsort(fitness);
    VectorXd step_w = VectorXd::Zero(n);
    for (std::size_t i = 0; i < mu; ++i) step_w += weights(static_cast<Eigen::Index>(i)) * steps.col(static_cast<Eigen::Index>(order[i]));
    mean += sigma * step_w;

    ps = (1.0 - cs) * ps + std::sqrt(cs * (2.0 - cs) * mueff) * (inv_sqrt * step_w);
    const double ps_norm = ps.norm();
    const double decay = 1.0 - std::pow(1.0 - cs, 2.0 * static_cast<double>(generation));
    const bool hsig = ps_norm / std::sqrt(decay) / chi_n < 1.4 + 2.0 / (nd + 1.0);
    pc = (1.0 - cc) * pc + (hsig ? std::sqrt(cc * (2.0 - cc) * mueff) : 0.0) * step_w;

    MatrixXd rank_mu = MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < mu; ++i) {
      const auto col = steps.col(static_cast<Eigen::Index>(order[i]));
      rank_mu.noalias() += weights(static_cast<Eigen::Index>(i)) * col * col.transpose();
    }
    cov = (1.0 - c1 - cmu) * cov + c1 * (pc * pc.transpose() + (hsig ? 0.0 : cc * (2.0 - cc)) * cov) + cmu * rank_mu;
    sigma *= std::exp((cs / damps) * (ps_norm / chi_n - 1.0));

    if (static_cast<double>(evals_since_decomposition) > decomposition_gap) {
      evals_since_decomposition = 0;
      cov = cov.triangularView<Eigen::Upper>();
      cov = cov.selfadjointView<Eigen::Upper>();
      Eigen::SelfAdjointEigenSolver<MatrixXd> eig(cov);
      VectorXd values = eig.eigenvalues().cwiseMax(1e-300);
      basis = eig.eigenvectors();
      scales = values.cwiseSqrt();
      inv_sqrt = basis * scales.cwiseInverse().asDiagonal() * basis.transpose();
      if (values.maxCoeff() > 1e14 * values.minCoeff()) ctx.stagnate();
    }
    if (!std::isfinite(sigma) || sigma * std::sqrt(cov.diagonal().maxCoeff()) < 1e-12 * max_range) {
      ctx.stagnate();
    }
  }
}

}  // namespace vqe::optim::detail
