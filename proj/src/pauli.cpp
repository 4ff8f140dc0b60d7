#include "qsurrogate/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <complex>
#include <map>
#include <sstream>

#include "qsurrogate/errors.hpp"

namespace qsur {

namespace {

constexpr std::size_t kMaxDecomposeQubits = 6;
constexpr std::size_t kMaxDenseQubits = 12;
constexpr double kHermitianTol = 1e-10;
constexpr double kDropTol = 1e-12;

std::complex<double> i_power(unsigned k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw ValidationError(std::string("invalid Pauli character '") + c + "'");
  }
}

PauliString::PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw ValidationError("Pauli word must act on at least one qubit");
}

PauliString PauliString::parse(std::string_view word) {
  std::vector<Pauli> ops;
  ops.reserve(word.size());
  for (char c : word) ops.push_back(pauli_from_char(c));
  return PauliString(std::move(ops));
}

PauliString PauliString::identity(std::size_t n) {
  return PauliString(std::vector<Pauli>(n, Pauli::I));
}

bool PauliString::is_identity() const {
  for (Pauli p : ops_)
    if (p != Pauli::I) return false;
  return true;
}

std::string PauliString::to_string() const {
  std::string s;
  s.reserve(ops_.size());
  for (Pauli p : ops_) s.push_back(to_char(p));
  return s;
}

std::uint64_t PauliString::flip_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < ops_.size(); ++q)
    if (ops_[q] == Pauli::X || ops_[q] == Pauli::Y) mask |= std::uint64_t{1} << q;
  return mask;
}

std::uint64_t PauliString::sign_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < ops_.size(); ++q)
    if (ops_[q] == Pauli::Y || ops_[q] == Pauli::Z) mask |= std::uint64_t{1} << q;
  return mask;
}

unsigned PauliString::y_count() const {
  unsigned k = 0;
  for (Pauli p : ops_) k += (p == Pauli::Y);
  return k;
}

Observable::Observable(std::size_t n, std::vector<PauliTerm> terms) : n_(n) {
  std::map<PauliString, std::size_t> position;
  for (auto& term : terms) {
    if (term.word.num_qubits() != n_)
      throw ValidationError("observable term " + term.word.to_string() + " does not act on " +
                            std::to_string(n_) + " qubits");
    if (!std::isfinite(term.coeff)) throw ValidationError("observable coefficient is not finite");
    auto [it, inserted] = position.emplace(term.word, terms_.size());
    if (inserted) {
      terms_.push_back(std::move(term));
    } else {
      terms_[it->second].coeff += term.coeff;
    }
  }
}

Observable Observable::all_z(std::size_t n) {
  return Observable(n, {PauliTerm{1.0, PauliString(std::vector<Pauli>(n, Pauli::Z))}});
}

double one_norm(const Observable& obs) {
  double total = 0.0;
  for (const auto& t : obs.terms()) total += std::abs(t.coeff);
  return total;
}

Observable decompose_dense(const Eigen::MatrixXcd& matrix) {
  const auto dim = static_cast<std::size_t>(matrix.rows());
  if (dim == 0 || matrix.cols() != matrix.rows() || (dim & (dim - 1)) != 0 || dim < 2)
    throw ValidationError("matrix must be square with power-of-two dimension >= 2");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if (n > kMaxDecomposeQubits)
    throw SizeError("dense decomposition is limited to " + std::to_string(kMaxDecomposeQubits) +
                    " qubits, got " + std::to_string(n));
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw ValidationError("matrix is not Hermitian");

  std::vector<PauliTerm> terms;
  const std::size_t words = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < words; ++code) {
    std::vector<Pauli> ops(n);
    for (std::size_t q = 0; q < n; ++q)
      ops[q] = static_cast<Pauli>((code >> (2 * (n - 1 - q))) & 3u);
    PauliString word(std::move(ops));
    const auto flip = word.flip_mask();
    const auto sign = word.sign_mask();
    const auto phase = i_power(word.y_count());
    // tr(P M) = sum_y <y^flip| P |y> M[y, y^flip]
    std::complex<double> trace = 0.0;
    for (std::size_t y = 0; y < dim; ++y) {
      const double s = (std::popcount(y & sign) & 1u) ? -1.0 : 1.0;
      trace += s * phase * matrix(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(y ^ flip));
    }
    const double a = trace.real() / static_cast<double>(dim);
    if (std::abs(a) >= kDropTol) terms.push_back({a, std::move(word)});
  }
  return Observable(n, std::move(terms));
}

Eigen::MatrixXcd to_dense(const Observable& obs) {
  const std::size_t n = obs.num_qubits();
  if (n > kMaxDenseQubits) throw SizeError("dense observable is limited to 12 qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : obs.terms()) {
    const auto flip = t.word.flip_mask();
    const auto sign = t.word.sign_mask();
    const auto phase = i_power(t.word.y_count());
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
      const double s = (std::popcount(x & sign) & 1u) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(x ^ flip), static_cast<Eigen::Index>(x)) += t.coeff * s * phase;
    }
  }
  return m;
}

Observable parse_observable(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<PauliTerm> terms;
  std::size_t n = 0;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string coeff_tok, word, extra;
    if (!(ls >> coeff_tok >> word) || (ls >> extra))
      throw ValidationError("observable line " + std::to_string(lineno) + ": expected '<coeff> <word>'");
    double coeff = 0.0;
    try {
      std::size_t used = 0;
      coeff = std::stod(coeff_tok, &used);
      if (used != coeff_tok.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ValidationError("observable line " + std::to_string(lineno) + ": bad coefficient '" +
                            coeff_tok + "'");
    }
    auto pw = PauliString::parse(word);
    if (n == 0) n = pw.num_qubits();
    terms.push_back({coeff, std::move(pw)});
  }
  if (n == 0) throw ValidationError("observable has no terms");
  return Observable(n, std::move(terms));
}

std::string format_observable(const Observable& obs) {
  std::string out;
  char buf[64];
  for (const auto& t : obs.terms()) {
    std::snprintf(buf, sizeof buf, "%.17g ", t.coeff);
    out += buf;
    out += t.word.to_string();
    out += '\n';
  }
  return out;
}

}  // namespace qsur
