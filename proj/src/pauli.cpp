#include "vqebench/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include <fmt/format.h>

#include "vqebench/errors.hpp"

namespace vqe::pauli {

namespace {

constexpr double kHermitianTolerance = 1e-12;

void require_same_width(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(fmt::format("{}: qubit counts differ ({} vs {})", what, a, b));
  }
}

std::string format_real(double v) {
  std::string s = fmt::format("{}", v);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

double parse_real(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw DomainError(fmt::format("invalid number '{}'", text));
  }
  return value;
}

}  // namespace

char to_char(Label label) noexcept {
  constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(label)];
}

PauliString::PauliString(std::size_t n_qubits) : PauliString(n_qubits, 0, 0) {}

PauliString::PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) {
    throw DomainError(fmt::format("Pauli string width {} outside [1, {}]", n_qubits, kMaxQubits));
  }
  const std::uint64_t valid = n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
  if (((x_mask | z_mask) & ~valid) != 0) {
    throw DomainError("Pauli string mask has bits beyond its width");
  }
}

PauliString PauliString::parse(std::string_view text) {
  PauliString p(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const std::size_t qubit = text.size() - 1 - i;
    switch (text[i]) {
      case 'I': break;
      case 'X': p.set(qubit, Label::X); break;
      case 'Y': p.set(qubit, Label::Y); break;
      case 'Z': p.set(qubit, Label::Z); break;
      default:
        throw DomainError(fmt::format("invalid Pauli label '{}' in '{}'", text[i], text));
    }
  }
  return p;
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t qubit, Label label) {
  PauliString p(n_qubits);
  p.set(qubit, label);
  return p;
}

int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

std::size_t PauliString::weight() const noexcept {
  return static_cast<std::size_t>(std::popcount(x_ | z_));
}

Label PauliString::operator[](std::size_t qubit) const noexcept {
  const int x = static_cast<int>((x_ >> qubit) & 1U);
  const int z = static_cast<int>((z_ >> qubit) & 1U);
  if (x && z) return Label::Y;
  if (x) return Label::X;
  if (z) return Label::Z;
  return Label::I;
}

void PauliString::set(std::size_t qubit, Label label) {
  if (qubit >= n_qubits_) {
    throw DimensionError(fmt::format("qubit {} outside a {}-qubit string", qubit, n_qubits_));
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  if (label == Label::X || label == Label::Y) x_ |= bit;
  if (label == Label::Z || label == Label::Y) z_ |= bit;
}

std::string PauliString::to_string() const {
  std::string s(n_qubits_, 'I');
  for (std::size_t q = 0; q < n_qubits_; ++q) s[n_qubits_ - 1 - q] = to_char((*this)[q]);
  return s;
}

std::strong_ordering PauliString::operator<=>(const PauliString& other) const noexcept {
  if (auto c = n_qubits_ <=> other.n_qubits_; c != 0) return c;
  for (std::size_t i = n_qubits_; i-- > 0;) {
    const auto a = static_cast<int>((*this)[i]);
    const auto b = static_cast<int>(other[i]);
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

Complex PauliProduct::phase() const noexcept {
  constexpr Complex kPhases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhases[quarter_turns & 3];
}

PauliProduct compose(const PauliString& a, const PauliString& b) {
  require_same_width(a.n_qubits(), b.n_qubits(), "compose");
  // P = i^{ny} X^x Z^z; moving Z^{za} past X^{xb} costs (-1)^{|za & xb|}.
  PauliString product(a.n_qubits(), a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask());
  const int swaps = std::popcount(a.z_mask() & b.x_mask());
  const int turns = a.y_count() + b.y_count() - product.y_count() + 2 * swaps;
  return PauliProduct{((turns % 4) + 4) % 4, product};
}

PauliSum::PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0) throw DomainError("PauliSum needs at least one qubit");
}

PauliSum::PauliSum(std::size_t n_qubits, std::vector<PauliTerm> terms) : PauliSum(n_qubits) {
  for (auto& t : terms) add(t.coefficient, std::move(t.string));
}

PauliSum PauliSum::parse(std::size_t n_qubits, const std::vector<std::string>& entries) {
  PauliSum s(n_qubits);
  for (const auto& e : entries) {
    PauliTerm t = parse_term(e);
    s.add(t.coefficient, std::move(t.string));
  }
  return s;
}

void PauliSum::add(Complex coefficient, PauliString string) {
  require_same_width(n_qubits_, string.n_qubits(), "PauliSum::add");
  if (!std::isfinite(coefficient.real()) || !std::isfinite(coefficient.imag())) {
    throw DomainError("Pauli term coefficient must be finite");
  }
  terms_.push_back(PauliTerm{coefficient, std::move(string)});
}

void PauliSum::add(const PauliSum& other) {
  require_same_width(n_qubits_, other.n_qubits_, "PauliSum::add");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
}

PauliSum& PauliSum::mark_hamiltonian() {
  for (const auto& t : terms_) {
    if (std::abs(t.coefficient.imag()) > kHermitianTolerance) {
      throw DomainError(fmt::format("non-Hermitian term {}", format_term(t)));
    }
  }
  hamiltonian_ = true;
  return *this;
}

Complex PauliSum::identity_coefficient() const noexcept {
  Complex c{0.0, 0.0};
  for (const auto& t : terms_) {
    if (t.string.is_identity()) c += t.coefficient;
  }
  return c;
}

std::vector<std::string> PauliSum::to_strings() const {
  std::vector<std::string> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(format_term(t));
  return out;
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  PauliSum out = a;
  out.hamiltonian_ = false;
  out.add(b);
  return out;
}

PauliSum operator*(Complex scale, const PauliSum& s) {
  PauliSum out(s.n_qubits_);
  for (const auto& t : s.terms_) out.add(scale * t.coefficient, t.string);
  return out;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  require_same_width(a.n_qubits_, b.n_qubits_, "PauliSum product");
  PauliSum out(a.n_qubits_);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      auto [turns, product] = compose(ta.string, tb.string);
      out.add(ta.coefficient * tb.coefficient * PauliProduct{turns, product}.phase(), product);
    }
  }
  return out;
}

PauliSum simplify(const PauliSum& s, double drop_tol) {
  if (!(drop_tol >= 0.0)) throw DomainError("drop tolerance must be non-negative");
  std::map<PauliString, Complex> merged;
  for (const auto& t : s.terms()) merged[t.string] += t.coefficient;
  PauliSum out(s.n_qubits());
  for (const auto& [string, coefficient] : merged) {
    if (std::abs(coefficient) > drop_tol) out.add(coefficient, string);
  }
  if (s.is_hamiltonian()) out.mark_hamiltonian();
  return out;
}

std::vector<CommutingGroup> qubitwise_commuting_groups(const PauliSum& s) {
  if (s.empty()) throw DomainError("cannot group an empty PauliSum");
  std::vector<CommutingGroup> groups;
  std::optional<std::size_t> constant_slot;
  for (const auto& t : s.terms()) {
    if (t.string.is_identity()) {
      if (!constant_slot) {
        constant_slot = groups.size();
        groups.push_back({PauliSum(s.n_qubits()), PauliString(s.n_qubits()), true});
      }
      groups[*constant_slot].terms.add(t.coefficient, t.string);
      continue;
    }
    bool placed = false;
    for (auto& g : groups) {
      if (g.constant) continue;
      const std::uint64_t overlap = g.basis.support() & t.string.support();
      const bool compatible = ((g.basis.x_mask() ^ t.string.x_mask()) & overlap) == 0 &&
                              ((g.basis.z_mask() ^ t.string.z_mask()) & overlap) == 0;
      if (!compatible) continue;
      g.terms.add(t.coefficient, t.string);
      g.basis = PauliString(s.n_qubits(), g.basis.x_mask() | t.string.x_mask(),
                            g.basis.z_mask() | t.string.z_mask());
      placed = true;
      break;
    }
    if (!placed) {
      CommutingGroup g{PauliSum(s.n_qubits()), t.string, false};
      g.terms.add(t.coefficient, t.string);
      groups.push_back(std::move(g));
    }
  }
  if (constant_slot && *constant_slot != 0) {
    std::rotate(groups.begin(), groups.begin() + static_cast<std::ptrdiff_t>(*constant_slot),
                groups.begin() + static_cast<std::ptrdiff_t>(*constant_slot) + 1);
  }
  return groups;
}

namespace {

void accumulate_dense(Eigen::MatrixXcd& m, Complex w, const PauliString& p) {
  const std::uint64_t dim = std::uint64_t{1} << p.n_qubits();
  Complex base = w;
  for (int k = 0; k < p.y_count(); ++k) base *= Complex{0.0, 1.0};
  for (std::uint64_t col = 0; col < dim; ++col) {
    const bool odd = parity(col & p.z_mask());
    m(static_cast<Eigen::Index>(col ^ p.x_mask()), static_cast<Eigen::Index>(col)) +=
        odd ? -base : base;
  }
}

void require_dense_capacity(std::size_t n_qubits) {
  if (n_qubits > kMaxDenseQubits) {
    throw CapacityError(
        fmt::format("dense matrix of {} qubits exceeds the {}-qubit guard", n_qubits, kMaxDenseQubits));
  }
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const PauliSum& s) {
  require_dense_capacity(s.n_qubits());
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << s.n_qubits());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : s.terms()) accumulate_dense(m, t.coefficient, t.string);
  return m;
}

Eigen::MatrixXcd dense_matrix(const PauliString& p) {
  require_dense_capacity(p.n_qubits());
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << p.n_qubits());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  accumulate_dense(m, Complex{1.0, 0.0}, p);
  return m;
}

std::string format_term(const PauliTerm& term) {
  const auto& c = term.coefficient;
  if (c.imag() == 0.0) return format_real(c.real()) + "*" + term.string.to_string();
  const std::string imag = format_real(c.imag());
  return fmt::format("({}{}{}j)*{}", format_real(c.real()), imag.front() == '-' ? "" : "+", imag,
                     term.string.to_string());
}

PauliTerm parse_term(std::string_view text) {
  const auto star = text.rfind('*');
  if (star == std::string_view::npos) {
    throw DomainError(fmt::format("Pauli term '{}' lacks a '*' separator", text));
  }
  std::string_view coeff = text.substr(0, star);
  PauliString string = PauliString::parse(text.substr(star + 1));
  if (!coeff.empty() && coeff.front() == '(') {
    if (coeff.size() < 4 || coeff.back() != ')' || coeff[coeff.size() - 2] != 'j') {
      throw DomainError(fmt::format("malformed complex coefficient in '{}'", text));
    }
    std::string_view body = coeff.substr(1, coeff.size() - 3);
    // Split at the sign that starts the imaginary part (skip exponent signs).
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    if (split == std::string_view::npos) {
      throw DomainError(fmt::format("malformed complex coefficient in '{}'", text));
    }
    return PauliTerm{Complex{parse_real(body.substr(0, split)), parse_real(body.substr(split))},
                     string};
  }
  return PauliTerm{Complex{parse_real(coeff), 0.0}, string};
}

}  // namespace vqe::pauli
