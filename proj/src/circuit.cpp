#include "qsurrogate/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsurrogate/errors.hpp"

namespace qsur {

namespace {

void check_unitary(const std::vector<std::complex<double>>& u, std::size_t dim) {
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      std::complex<double> acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) acc += std::conj(u[k * dim + r]) * u[k * dim + c];
      const double expect = (r == c) ? 1.0 : 0.0;
      if (std::abs(acc - expect) > 1e-10) throw ValidationError("custom gate matrix is not unitary");
    }
  }
}

std::size_t parse_index(const std::string& tok, std::size_t lineno) {
  std::size_t used = 0;
  long long v = -1;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0)
    throw ValidationError("circuit line " + std::to_string(lineno) + ": bad index '" + tok + "'");
  return static_cast<std::size_t>(v);
}

const char* fixed_name(FixedKind k) {
  switch (k) {
    case FixedKind::H: return "H";
    case FixedKind::S: return "S";
    case FixedKind::T: return "T";
    case FixedKind::X: return "X";
    case FixedKind::Y: return "Y";
    case FixedKind::Z: return "Z";
    case FixedKind::CNOT: return "CNOT";
    case FixedKind::Custom: return "CUSTOM";
  }
  return "?";
}

}  // namespace

FixedGate make_fixed(FixedKind kind, std::size_t wire) {
  if (kind == FixedKind::CNOT || kind == FixedKind::Custom)
    throw ValidationError("make_fixed only builds single-qubit named gates");
  return FixedGate{kind, {wire}, {}};
}

FixedGate make_cnot(std::size_t control, std::size_t target) {
  return FixedGate{FixedKind::CNOT, {control, target}, {}};
}

FixedGate make_custom(std::vector<std::size_t> wires, std::vector<std::complex<double>> matrix) {
  if (wires.empty() || wires.size() > 2) throw ValidationError("custom gates act on 1 or 2 wires");
  const std::size_t dim = std::size_t{1} << wires.size();
  if (matrix.size() != dim * dim) throw ValidationError("custom gate matrix has wrong size");
  check_unitary(matrix, dim);
  return FixedGate{FixedKind::Custom, std::move(wires), std::move(matrix)};
}

RotationGate make_rotation(Pauli axis, std::size_t n, std::size_t wire, std::size_t param) {
  if (axis == Pauli::I) throw ValidationError("rotation axis must be X, Y or Z");
  if (wire >= n) throw ValidationError("rotation wire out of range");
  std::vector<Pauli> ops(n, Pauli::I);
  ops[wire] = axis;
  return RotationGate{PauliString(std::move(ops)), param};
}

ParametrizedCircuit::ParametrizedCircuit(std::size_t num_qubits, std::size_t num_params,
                                         std::vector<Gate> gates)
    : n_(num_qubits), m_(num_params), gates_(std::move(gates)) {
  if (n_ == 0) throw ValidationError("circuit needs at least one qubit");
  if (n_ > kMaxSimulatedQubits)
    throw SizeError("dense simulation is limited to " + std::to_string(kMaxSimulatedQubits) + " qubits");
  std::vector<int> uses(m_, 0);
  for (const auto& g : gates_) {
    if (const auto* f = std::get_if<FixedGate>(&g)) {
      const std::size_t arity = (f->kind == FixedKind::CNOT) ? 2 : (f->kind == FixedKind::Custom ? f->wires.size() : 1);
      if (f->wires.size() != arity) throw ValidationError("gate has wrong number of wires");
      for (std::size_t w : f->wires)
        if (w >= n_) throw ValidationError("gate wire " + std::to_string(w) + " out of range");
      if (arity == 2 && f->wires[0] == f->wires[1]) throw ValidationError("gate wires must be distinct");
      if (f->kind == FixedKind::Custom) {
        const std::size_t dim = std::size_t{1} << arity;
        if (f->matrix.size() != dim * dim) throw ValidationError("custom gate matrix has wrong size");
      }
    } else {
      const auto& r = std::get<RotationGate>(g);
      if (r.generator.num_qubits() != n_)
        throw ValidationError("rotation generator " + r.generator.to_string() + " does not act on " +
                              std::to_string(n_) + " qubits");
      if (r.generator.is_identity()) throw ValidationError("rotation generator must not be the identity");
      if (r.param >= m_)
        throw ValidationError("rotation parameter index " + std::to_string(r.param + 1) + " exceeds m = " +
                              std::to_string(m_));
      ++uses[r.param];
    }
  }
  for (std::size_t j = 0; j < m_; ++j)
    if (uses[j] != 1)
      throw ValidationError("parameter " + std::to_string(j + 1) + " is used by " + std::to_string(uses[j]) +
                            " rotation gates, expected exactly one");
}

ParametrizedCircuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Gate> gates;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto where = [&] { return "circuit line " + std::to_string(lineno) + ": "; };
    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "qubits" || tok[2] != "params")
        throw ValidationError(where() + "expected header 'qubits n params m'");
      n = parse_index(tok[1], lineno);
      m = parse_index(tok[3], lineno);
      if (n == 0 || n > kMaxSimulatedQubits) throw SizeError(where() + "qubit count out of range");
      have_header = true;
      continue;
    }
    const std::string& op = tok[0];
    auto expect_args = [&](std::size_t k) {
      if (tok.size() != k + 1) throw ValidationError(where() + op + " takes " + std::to_string(k) + " arguments");
    };
    auto qubit = [&](const std::string& t) {
      auto q = parse_index(t, lineno);
      if (q >= n) throw ValidationError(where() + "qubit " + t + " out of range");
      return q;
    };
    auto param = [&](const std::string& t) {
      auto j = parse_index(t, lineno);
      if (j == 0) throw ValidationError(where() + "parameter indices are 1-based");
      return j - 1;
    };
    if (op == "H" || op == "S" || op == "T" || op == "X" || op == "Y" || op == "Z") {
      expect_args(1);
      static constexpr std::pair<const char*, FixedKind> names[] = {
          {"H", FixedKind::H}, {"S", FixedKind::S}, {"T", FixedKind::T},
          {"X", FixedKind::X}, {"Y", FixedKind::Y}, {"Z", FixedKind::Z}};
      FixedKind kind = FixedKind::H;
      for (const auto& [name, k] : names)
        if (op == name) kind = k;
      gates.emplace_back(make_fixed(kind, qubit(tok[1])));
    } else if (op == "CNOT") {
      expect_args(2);
      gates.emplace_back(make_cnot(qubit(tok[1]), qubit(tok[2])));
    } else if (op == "RX" || op == "RY" || op == "RZ") {
      expect_args(2);
      const Pauli axis = op == "RX" ? Pauli::X : (op == "RY" ? Pauli::Y : Pauli::Z);
      gates.emplace_back(make_rotation(axis, n, qubit(tok[1]), param(tok[2])));
    } else if (op == "RP") {
      expect_args(2);
      auto word = PauliString::parse(tok[1]);
      if (word.num_qubits() != n) throw ValidationError(where() + "RP word length must equal qubit count");
      gates.emplace_back(RotationGate{std::move(word), param(tok[2])});
    } else {
      throw ValidationError(where() + "unknown gate '" + op + "'");
    }
  }
  if (!have_header) throw ValidationError("circuit is missing the 'qubits n params m' header");
  return ParametrizedCircuit(n, m, std::move(gates));
}

std::string format_circuit(const ParametrizedCircuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.num_qubits() << " params " << circuit.num_params() << '\n';
  for (const auto& g : circuit.gates()) {
    if (const auto* f = std::get_if<FixedGate>(&g)) {
      if (f->kind == FixedKind::Custom) throw ValidationError("custom gates have no text form");
      out << fixed_name(f->kind);
      for (auto w : f->wires) out << ' ' << w;
      out << '\n';
      continue;
    }
    const auto& r = std::get<RotationGate>(g);
    std::size_t support = 0, wire = 0;
    for (std::size_t q = 0; q < r.generator.num_qubits(); ++q)
      if (r.generator[q] != Pauli::I) ++support, wire = q;
    if (support == 1) {
      out << 'R' << to_char(r.generator[wire]) << ' ' << wire << ' ' << r.param + 1 << '\n';
    } else {
      out << "RP " << r.generator.to_string() << ' ' << r.param + 1 << '\n';
    }
  }
  return out.str();
}

}  // namespace qsur
