#include "vqebench/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include <fmt/format.h>
#include <lapacke.h>

#include "vqebench/errors.hpp"

namespace vqe::models {

using pauli::Complex;
using pauli::Label;
using pauli::PauliString;
using pauli::PauliSum;

PauliSum ising_hamiltonian(std::size_t n_qubits) {
  if (n_qubits < 2) throw DomainError("Ising chain needs at least 2 qubits");
  PauliSum h(n_qubits);
  for (std::size_t q = 0; q + 1 < n_qubits; ++q) {
    PauliString zz(n_qubits);
    zz.set(q, Label::Z);
    zz.set(q + 1, Label::Z);
    h.add(-1.0, zz);
  }
  h = pauli::simplify(h);
  h.mark_hamiltonian();
  return h;
}

PauliSum annihilation(std::size_t mode, std::size_t n_qubits) {
  if (mode >= n_qubits) throw DimensionError(fmt::format("mode {} outside {} qubits", mode, n_qubits));
  PauliString x(n_qubits), y(n_qubits);
  for (std::size_t q = 0; q < mode; ++q) {
    x.set(q, Label::Z);
    y.set(q, Label::Z);
  }
  x.set(mode, Label::X);
  y.set(mode, Label::Y);
  PauliSum c(n_qubits);
  c.add(0.5, x);
  c.add(Complex{0.0, 0.5}, y);
  return c;
}

PauliSum creation(std::size_t mode, std::size_t n_qubits) {
  PauliSum c = annihilation(mode, n_qubits);
  PauliSum dagger(n_qubits);
  for (const auto& t : c.terms()) dagger.add(std::conj(t.coefficient), t.string);
  return dagger;
}

PauliSum jw_hopping_term(std::size_t i, std::size_t j, std::size_t spin_block_offset,
                         std::size_t n_qubits, double t) {
  if (n_qubits < 2 || n_qubits % 2 != 0) throw DomainError("register must split into two spin blocks");
  const std::size_t block = n_qubits / 2;
  if (spin_block_offset != 0 && spin_block_offset != block) {
    throw DomainError(fmt::format("spin block offset {} is not 0 or {}", spin_block_offset, block));
  }
  if (i >= block || j >= block) {
    throw DomainError(fmt::format("hopping ({}, {}) leaves the {}-site spin block", i, j, block));
  }
  if (i == j) throw DomainError("hopping needs two distinct sites");
  const std::size_t a = spin_block_offset + i;
  const std::size_t b = spin_block_offset + j;
  PauliSum hop = creation(a, n_qubits) * annihilation(b, n_qubits) +
                 creation(b, n_qubits) * annihilation(a, n_qubits);
  return pauli::simplify(Complex{-t, 0.0} * hop);
}

PauliSum hubbard_hamiltonian(const HubbardSpec& spec) {
  if (spec.sites < 2) throw DomainError("Hubbard model needs at least 2 sites");
  const std::size_t n = 2 * spec.sites;
  PauliSum h(n);
  const std::size_t bonds = spec.periodic ? spec.sites : spec.sites - 1;
  for (std::size_t offset : {std::size_t{0}, spec.sites}) {
    for (std::size_t i = 0; i < bonds; ++i) {
      h.add(jw_hopping_term(i, (i + 1) % spec.sites, offset, n, spec.t));
    }
  }
  for (std::size_t i = 0; i < spec.sites; ++i) {
    const PauliSum up = creation(i, n) * annihilation(i, n);
    const PauliSum down = creation(i + spec.sites, n) * annihilation(i + spec.sites, n);
    h.add(Complex{spec.U, 0.0} * (up * down));
  }
  h = pauli::simplify(h);
  h.mark_hamiltonian();
  return h;
}

PauliSum number_operator(std::size_t n_qubits) {
  PauliSum n(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) {
    n.add(0.5, PauliString(n_qubits));
    n.add(-0.5, PauliString::single(n_qubits, q, Label::Z));
  }
  return pauli::simplify(n);
}

std::size_t Spectrum::ground_degeneracy(double tol) const {
  return static_cast<std::size_t>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                                [&](double e) { return e <= ground() + tol; }));
}

namespace {

bool has_real_matrix(const PauliSum& h) {
  return std::all_of(h.terms().begin(), h.terms().end(), [](const pauli::PauliTerm& t) {
    return t.coefficient.imag() == 0.0 && t.string.y_count() % 2 == 0;
  });
}

struct Entry {
  std::size_t row;
  Complex value;
};

/// Nonzero matrix elements per column, merged by row.
std::vector<std::vector<Entry>> sparse_columns(const PauliSum& h) {
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  std::vector<std::vector<Entry>> cols(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    auto& entries = cols[col];
    for (const auto& t : h.terms()) {
      Complex w = t.coefficient;
      for (int k = 0; k < t.string.y_count(); ++k) w *= Complex{0.0, 1.0};
      if (pauli::parity(col & t.string.z_mask())) w = -w;
      entries.push_back({col ^ t.string.x_mask(), w});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (out > 0 && entries[out - 1].row == entries[i].row) {
        entries[out - 1].value += entries[i].value;
      } else {
        entries[out++] = entries[i];
      }
    }
    entries.resize(out);
    std::erase_if(entries, [](const Entry& e) { return std::abs(e.value) <= 1e-14; });
  }
  return cols;
}

/// Basis states grouped into connected components of the nonzero pattern.
std::vector<std::vector<std::size_t>> blocks(const std::vector<std::vector<Entry>>& cols) {
  std::vector<std::size_t> parent(cols.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t col = 0; col < cols.size(); ++col) {
    for (const auto& e : cols[col]) {
      const std::size_t a = find(col), b = find(e.row);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> index(cols.size(), SIZE_MAX);
  for (std::size_t b = 0; b < cols.size(); ++b) {
    const std::size_t root = find(b);
    if (index[root] == SIZE_MAX) {
      index[root] = out.size();
      out.emplace_back();
    }
    out[index[root]].push_back(b);
  }
  return out;
}

std::vector<double> lowest_real(std::vector<double>& m, std::size_t size, std::size_t k) {
  const auto n = static_cast<lapack_int>(size);
  lapack_int found = 0;
  std::vector<double> w(size);
  std::vector<lapack_int> support(2 * size);
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'I', 'L', n, m.data(), n, 0.0, 0.0, 1,
                                         static_cast<lapack_int>(k), 0.0, &found, w.data(), nullptr, 1,
                                         support.data());
  if (info != 0) throw std::runtime_error(fmt::format("dsyevr failed with info {}", info));
  w.resize(static_cast<std::size_t>(found));
  return w;
}

std::vector<double> lowest_complex(std::vector<Complex>& m, std::size_t size, std::size_t k) {
  const auto n = static_cast<lapack_int>(size);
  lapack_int found = 0;
  std::vector<double> w(size);
  std::vector<lapack_int> support(2 * size);
  const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'N', 'I', 'L', n,
                                         reinterpret_cast<lapack_complex_double*>(m.data()), n, 0.0, 0.0, 1,
                                         static_cast<lapack_int>(k), 0.0, &found, w.data(), nullptr, 1,
                                         support.data());
  if (info != 0) throw std::runtime_error(fmt::format("zheevr failed with info {}", info));
  w.resize(static_cast<std::size_t>(found));
  return w;
}

}  // namespace

Spectrum exact_spectrum(const PauliSum& h, std::size_t k) {
  if (h.n_qubits() > kMaxSpectrumQubits) {
    throw CapacityError(fmt::format("exact spectrum limited to {} qubits, got {}", kMaxSpectrumQubits,
                                    h.n_qubits()));
  }
  if (k == 0) throw DomainError("exact_spectrum needs k >= 1");
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  const std::size_t count = std::min(k, dim);
  const bool real = has_real_matrix(h);
  const auto cols = sparse_columns(h);
  Spectrum s;
  // Blocks of the nonzero pattern never mix, so each is diagonalized alone.
  for (const auto& members : blocks(cols)) {
    const std::size_t size = members.size();
    const std::size_t want = std::min(count, size);
    std::vector<std::size_t> local(dim, SIZE_MAX);
    for (std::size_t i = 0; i < size; ++i) local[members[i]] = i;
    std::vector<double> w;
    if (real) {
      std::vector<double> m(size * size, 0.0);
      for (std::size_t c = 0; c < size; ++c) {
        for (const auto& e : cols[members[c]]) m[c * size + local[e.row]] = e.value.real();
      }
      w = lowest_real(m, size, want);
    } else {
      std::vector<Complex> m(size * size, Complex{0.0, 0.0});
      for (std::size_t c = 0; c < size; ++c) {
        for (const auto& e : cols[members[c]]) m[c * size + local[e.row]] = e.value;
      }
      w = lowest_complex(m, size, want);
    }
    s.eigenvalues.insert(s.eigenvalues.end(), w.begin(), w.end());
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  s.eigenvalues.resize(count);
  s.k = k;
  return s;
}

}  // namespace vqe::models
