#include "qsurrogate/simulator.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>

#include "qsurrogate/errors.hpp"

namespace qsur {

namespace {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;  // row-major

constexpr double kImagTol = 1e-10;

Mat2 named_matrix(FixedKind kind) {
  const double r = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case FixedKind::H: return {cd{r}, cd{r}, cd{r}, cd{-r}};
    case FixedKind::S: return {cd{1}, cd{0}, cd{0}, cd{0, 1}};
    case FixedKind::T: return {cd{1}, cd{0}, cd{0}, std::polar(1.0, std::numbers::pi / 4)};
    case FixedKind::X: return {cd{0}, cd{1}, cd{1}, cd{0}};
    case FixedKind::Y: return {cd{0}, cd{0, -1}, cd{0, 1}, cd{0}};
    case FixedKind::Z: return {cd{1}, cd{0}, cd{0}, cd{-1}};
    default: break;
  }
  throw ValidationError("not a single-qubit named gate");
}

void apply_1q(StateVector& psi, std::size_t q, const Mat2& u) {
  const std::size_t bit = std::size_t{1} << q;
  const std::size_t dim = psi.size();
  for (std::size_t base = 0; base < dim; base += 2 * bit) {
    for (std::size_t i = base; i < base + bit; ++i) {
      const cd a0 = psi[i];
      const cd a1 = psi[i | bit];
      psi[i] = u[0] * a0 + u[1] * a1;
      psi[i | bit] = u[2] * a0 + u[3] * a1;
    }
  }
}

void apply_2q(StateVector& psi, std::size_t w_hi, std::size_t w_lo, std::span<const cd> u) {
  const std::size_t bh = std::size_t{1} << w_hi;
  const std::size_t bl = std::size_t{1} << w_lo;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & (bh | bl)) continue;
    const std::array<std::size_t, 4> idx = {i, i | bl, i | bh, i | bh | bl};
    std::array<cd, 4> a;
    for (int k = 0; k < 4; ++k) a[k] = psi[idx[k]];
    for (int r = 0; r < 4; ++r) {
      cd acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += u[4 * r + c] * a[c];
      psi[idx[r]] = acc;
    }
  }
}

void apply_cnot(StateVector& psi, std::size_t control, std::size_t target) {
  const std::size_t bc = std::size_t{1} << control;
  const std::size_t bt = std::size_t{1} << target;
  for (std::size_t i = bc; i < psi.size(); i = (i + 1) | bc)
    if (!(i & bt)) std::swap(psi[i], psi[i | bt]);
}

// diag(1, phase) on qubit q
void apply_phase(StateVector& psi, std::size_t q, cd phase) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = bit; i < psi.size(); i = (i + 1) | bit) psi[i] *= phase;
}

cd i_power(unsigned k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void apply_rotation(StateVector& psi, const RotationGate& g, double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  std::size_t support = 0, wire = 0;
  for (std::size_t q = 0; q < g.generator.num_qubits(); ++q)
    if (g.generator[q] != Pauli::I) ++support, wire = q;
  if (support == 1) {
    // cos(t/2) I - i sin(t/2) P
    const Mat2 p = named_matrix(g.generator[wire] == Pauli::X   ? FixedKind::X
                                : g.generator[wire] == Pauli::Y ? FixedKind::Y
                                                                : FixedKind::Z);
    const cd mi{0.0, -s};
    apply_1q(psi, wire, {c + mi * p[0], mi * p[1], mi * p[2], c + mi * p[3]});
    return;
  }
  const auto flip = g.generator.flip_mask();
  const auto sign = g.generator.sign_mask();
  const cd phase = i_power(g.generator.y_count()) * cd{0.0, -s};
  StateVector out(psi.size());
  for (std::size_t x = 0; x < psi.size(); ++x) {
    const double sg = (std::popcount(x & sign) & 1u) ? -1.0 : 1.0;
    out[x ^ flip] += phase * sg * psi[x];
    out[x] += c * psi[x];
  }
  psi.swap(out);
}

}  // namespace

StateVector simulate(const ParametrizedCircuit& circuit, std::span<const double> theta) {
  if (theta.size() != circuit.num_params())
    throw ValidationError("theta has length " + std::to_string(theta.size()) + ", circuit expects " +
                          std::to_string(circuit.num_params()));
  StateVector psi(std::size_t{1} << circuit.num_qubits(), cd{0.0});
  psi[0] = 1.0;
  for (const auto& gate : circuit.gates()) {
    if (const auto* f = std::get_if<FixedGate>(&gate)) {
      switch (f->kind) {
        case FixedKind::CNOT:
          apply_cnot(psi, f->wires[0], f->wires[1]);
          break;
        case FixedKind::Custom:
          if (f->wires.size() == 1) {
            apply_1q(psi, f->wires[0], {f->matrix[0], f->matrix[1], f->matrix[2], f->matrix[3]});
          } else {
            apply_2q(psi, f->wires[0], f->wires[1], f->matrix);
          }
          break;
        case FixedKind::S:
        case FixedKind::T:
        case FixedKind::Z:
          apply_phase(psi, f->wires[0], named_matrix(f->kind)[3]);
          break;
        default:
          apply_1q(psi, f->wires[0], named_matrix(f->kind));
      }
    } else {
      const auto& r = std::get<RotationGate>(gate);
      apply_rotation(psi, r, theta[r.param]);
    }
  }
  return psi;
}

std::complex<double> pauli_expectation(std::span<const std::complex<double>> state, const PauliString& word) {
  if (state.size() != (std::size_t{1} << word.num_qubits()))
    throw ValidationError("state size does not match Pauli word on " + std::to_string(word.num_qubits()) +
                          " qubits");
  const auto flip = word.flip_mask();
  const auto sign = word.sign_mask();
  cd acc = 0.0;
  for (std::size_t x = 0; x < state.size(); ++x) {
    const cd term = std::conj(state[x ^ flip]) * state[x];
    acc += (std::popcount(x & sign) & 1u) ? -term : term;
  }
  return i_power(word.y_count()) * acc;
}

double expectation(std::span<const std::complex<double>> state, const Observable& obs) {
  if (state.size() != (std::size_t{1} << obs.num_qubits()))
    throw ValidationError("state size " + std::to_string(state.size()) + " does not match observable on " +
                          std::to_string(obs.num_qubits()) + " qubits");
  cd total = 0.0;
  for (const auto& t : obs.terms()) total += t.coeff * pauli_expectation(state, t.word);
  if (std::abs(total.imag()) > kImagTol)
    throw NumericError("expectation has imaginary residue " + std::to_string(total.imag()));
  return total.real();
}

double f_eval(const ParametrizedCircuit& circuit, const Observable& obs, std::span<const double> theta) {
  if (obs.num_qubits() != circuit.num_qubits())
    throw ValidationError("observable acts on " + std::to_string(obs.num_qubits()) + " qubits, circuit has " +
                          std::to_string(circuit.num_qubits()));
  const auto psi = simulate(circuit, theta);
  return expectation(psi, obs);
}

}  // namespace qsur
