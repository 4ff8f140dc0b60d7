#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace qsur {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product P_0 (x) ... (x) P_{n-1}. Character k of the string form acts
/// on qubit k, and qubit k is bit k of a computational basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> ops);
  static PauliString parse(std::string_view word);
  static PauliString identity(std::size_t n);

  std::size_t num_qubits() const { return ops_.size(); }
  const std::vector<Pauli>& ops() const { return ops_; }
  Pauli operator[](std::size_t q) const { return ops_[q]; }

  bool is_identity() const;
  std::string to_string() const;

  // Bit masks describing the action P|x> = i^{y_count} (-1)^{popcount(x & sign_mask)} |x ^ flip_mask>.
  // Only meaningful for n <= 64.
  std::uint64_t flip_mask() const;
  std::uint64_t sign_mask() const;
  unsigned y_count() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> ops_;
};

struct PauliTerm {
  double coeff = 0.0;
  PauliString word;
};

/// Weighted sum of Pauli words over a fixed qubit count. Terms with equal words
/// are merged on construction, keeping the position of the first occurrence.
class Observable {
 public:
  Observable() = default;
  Observable(std::size_t n, std::vector<PauliTerm> terms);

  /// Z (x) ... (x) Z on n qubits with unit coefficient.
  static Observable all_z(std::size_t n);

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Sum of |a_t| over the terms.
double one_norm(const Observable& obs);

/// Pauli decomposition of a dense Hermitian 2^n x 2^n matrix, a_P = tr(P M) / 2^n.
/// Coefficients below 1e-12 in magnitude are dropped. Capped at n = 6.
Observable decompose_dense(const Eigen::MatrixXcd& matrix);

/// Dense matrix of the weighted sum. Capped at n = 12.
Eigen::MatrixXcd to_dense(const Observable& obs);

/// Parses `<coeff> <word>` lines; blank lines and lines starting with '#' are skipped.
Observable parse_observable(std::string_view text);
std::string format_observable(const Observable& obs);

}  // namespace qsur
