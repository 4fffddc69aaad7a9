#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace vqe::pauli {

using Complex = std::complex<double>;

/// Parity of the set bits of `v`, branch-free and without a popcount
/// instruction.
constexpr bool parity(std::uint64_t v) noexcept {
  v ^= v >> 32;
  v ^= v >> 16;
  v ^= v >> 8;
  v ^= v >> 4;
  return (0x6996u >> (v & 0xfu)) & 1u;
}

enum class Label : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Label label) noexcept;

/// Tensor product of single-qubit Pauli operators.
///
/// Stored in symplectic form: qubit q carries X if only bit q of the x mask
/// is set, Z if only the z bit is set, Y if both are. Qubit 0 is the least
/// significant bit of a computational-basis index and the rightmost
/// character of the text form ("ZXI" has Z on qubit 2).
class PauliString {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  explicit PauliString(std::size_t n_qubits);
  PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses "XYZI"-style text, qubit 0 rightmost.
  static PauliString parse(std::string_view text);

  /// Single non-identity label on `qubit`.
  static PauliString single(std::size_t n_qubits, std::size_t qubit, Label label);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  std::uint64_t support() const noexcept { return x_ | z_; }
  /// Number of Y labels.
  int y_count() const noexcept;
  std::size_t weight() const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }

  Label operator[](std::size_t qubit) const noexcept;
  void set(std::size_t qubit, Label label);

  std::string to_string() const;

  bool operator==(const PauliString&) const noexcept = default;
  /// Lexicographic over the text form with I < X < Y < Z.
  std::strong_ordering operator<=>(const PauliString& other) const noexcept;

 private:
  std::size_t n_qubits_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Result of multiplying two Pauli strings: i^quarter_turns * product.
struct PauliProduct {
  int quarter_turns = 0;  // 0..3
  PauliString product;

  Complex phase() const noexcept;
};

/// Single Pauli string and global phase with matrix(a)*matrix(b) == phase*matrix(product).
PauliProduct compose(const PauliString& a, const PauliString& b);

struct PauliTerm {
  Complex coefficient;
  PauliString string;
};

/// Weighted sum of Pauli strings over a fixed register.
class PauliSum {
 public:
  explicit PauliSum(std::size_t n_qubits);
  PauliSum(std::size_t n_qubits, std::vector<PauliTerm> terms);

  /// Parses entries such as "-1.0*ZZI" or "(0.5+0.25j)*XY".
  static PauliSum parse(std::size_t n_qubits, const std::vector<std::string>& entries);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  void add(Complex coefficient, PauliString string);
  void add(const PauliSum& other);

  /// True when tagged as a physical observable (real coefficients checked).
  bool is_hamiltonian() const noexcept { return hamiltonian_; }

  /// Tags the sum as a Hermitian observable. Throws DomainError if any
  /// coefficient has an imaginary part above 1e-12.
  PauliSum& mark_hamiltonian();

  /// Coefficient of the all-I term (zero if absent).
  Complex identity_coefficient() const noexcept;

  std::vector<std::string> to_strings() const;

  friend PauliSum operator+(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator*(Complex scale, const PauliSum& s);
  /// Operator product; each term pair is composed with its phase.
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

 private:
  std::size_t n_qubits_;
  std::vector<PauliTerm> terms_;
  bool hamiltonian_ = false;
};

inline constexpr double kDefaultDropTolerance = 1e-12;

/// Merges duplicate strings, drops |coefficient| <= drop_tol and sorts terms
/// lexicographically. The hamiltonian tag is preserved.
PauliSum simplify(const PauliSum& s, double drop_tol = kDefaultDropTolerance);

/// Terms that can be estimated from one basis-rotated measurement.
struct CommutingGroup {
  PauliSum terms;
  /// Per-qubit measurement basis: the one non-I label used on each qubit.
  PauliString basis;
  /// Holds only the all-I term; needs no measurement.
  bool constant = false;
};

/// Greedy first-fit partition into qubit-wise commuting groups, visiting
/// terms in the sum's order. The identity term, if present, goes into its
/// own leading group flagged constant.
std::vector<CommutingGroup> qubitwise_commuting_groups(const PauliSum& s);

inline constexpr std::size_t kMaxDenseQubits = 14;

/// Dense 2^n x 2^n matrix of the sum. Throws CapacityError above 14 qubits.
Eigen::MatrixXcd dense_matrix(const PauliSum& s);

/// Dense matrix of one string (Kronecker product of its labels).
Eigen::MatrixXcd dense_matrix(const PauliString& p);

std::string format_term(const PauliTerm& term);
PauliTerm parse_term(std::string_view text);

}  // namespace vqe::pauli
