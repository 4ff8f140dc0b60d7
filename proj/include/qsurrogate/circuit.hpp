#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qsurrogate/pauli.hpp"

namespace qsur {

inline constexpr std::size_t kMaxSimulatedQubits = 24;

enum class FixedKind { H, S, T, X, Y, Z, CNOT, Custom };

/// Non-parametrized unitary on one or two wires. For CNOT, wires = {control, target}.
/// Custom matrices are row-major; on two wires the basis index is
/// 2 * bit(wires[0]) + bit(wires[1]).
struct FixedGate {
  FixedKind kind = FixedKind::H;
  std::vector<std::size_t> wires;
  std::vector<std::complex<double>> matrix;  // only for Custom
};

/// exp(-i theta_j / 2 * G) for a non-identity Pauli word G. param is 0-based.
struct RotationGate {
  PauliString generator;
  std::size_t param = 0;
};

using Gate = std::variant<FixedGate, RotationGate>;

FixedGate make_fixed(FixedKind kind, std::size_t wire);
FixedGate make_cnot(std::size_t control, std::size_t target);
FixedGate make_custom(std::vector<std::size_t> wires, std::vector<std::complex<double>> matrix);
/// Single-qubit Pauli rotation, axis in {X, Y, Z}.
RotationGate make_rotation(Pauli axis, std::size_t n, std::size_t wire, std::size_t param);

/// Gate list defining U(theta). Every parameter index 0..m-1 is used by exactly
/// one rotation gate.
class ParametrizedCircuit {
 public:
  ParametrizedCircuit(std::size_t num_qubits, std::size_t num_params, std::vector<Gate> gates);

  std::size_t num_qubits() const { return n_; }
  std::size_t num_params() const { return m_; }
  const std::vector<Gate>& gates() const { return gates_; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<Gate> gates_;
};

/// Text format, one gate per line after a `qubits n params m` header:
///   H q | S q | T q | X q | Y q | Z q | CNOT c t | RX q j | RY q j | RZ q j | RP <word> j
/// Qubits are 0-based, parameter indices j are 1-based. '#' starts a comment.
ParametrizedCircuit parse_circuit(std::string_view text);
std::string format_circuit(const ParametrizedCircuit& circuit);

}  // namespace qsur
