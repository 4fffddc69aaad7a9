#pragma once

// Brute-force references used by the tests. Nothing here calls into the
// library's own matrix builders.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix pauli2(char label) {
  const Complex i{0.0, 1.0};
  Matrix m(2, 2);
  switch (label) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  }
  return out;
}

/// Kronecker product of the labels, leftmost character = highest qubit.
inline Matrix string_matrix(const std::string& text) {
  Matrix m = Matrix::Identity(1, 1);
  for (char c : text) m = kron(m, pauli2(c));
  return m;
}

/// Embeds a k-qubit operator (targets[0] = low bit) into an n-qubit register
/// by summing over matrix elements.
inline Matrix embed(const Matrix& local, const std::vector<std::size_t>& targets, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  Matrix full = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t local_col = 0;
    for (std::size_t k = 0; k < targets.size(); ++k) local_col |= ((col >> targets[k]) & 1u) << k;
    for (std::size_t local_row = 0; local_row < (std::size_t{1} << targets.size()); ++local_row) {
      std::size_t row = col;
      for (std::size_t k = 0; k < targets.size(); ++k) {
        row &= ~(std::size_t{1} << targets[k]);
        row |= ((local_row >> k) & 1u) << targets[k];
      }
      full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
          local(static_cast<Eigen::Index>(local_row), static_cast<Eigen::Index>(local_col));
    }
  }
  return full;
}

/// exp(-i * angle * H) for Hermitian H via its eigendecomposition.
inline Matrix expm_hermitian(const Matrix& h, double angle) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  Eigen::VectorXcd phases(eig.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(Complex{0.0, -angle * eig.eigenvalues()(k)});
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

inline Eigen::VectorXcd basis_zero(std::size_t n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  v(0) = 1.0;
  return v;
}

}  // namespace oracle
