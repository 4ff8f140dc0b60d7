#pragma once

// Test-side reference implementations. These rebuild every gate as a dense
// 2^n x 2^n matrix and never touch the library's amplitude kernels, so they
// serve as an independent oracle for small circuits.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qsurrogate/circuit.hpp"
#include "qsurrogate/pauli.hpp"

namespace qsur::testing {

using cd = std::complex<double>;
using Mat2 = std::array<std::array<cd, 2>, 2>;

inline Mat2 pauli_matrix(Pauli p) {
  const cd i{0.0, 1.0};
  switch (p) {
    case Pauli::I: return {{{1.0, 0.0}, {0.0, 1.0}}};
    case Pauli::X: return {{{0.0, 1.0}, {1.0, 0.0}}};
    case Pauli::Y: return {{{0.0, -i}, {i, 0.0}}};
    case Pauli::Z: return {{{1.0, 0.0}, {0.0, -1.0}}};
  }
  return {};
}

// Tensor product with ops[q] acting on bit q of the basis index.
inline Eigen::MatrixXcd embed(const std::vector<Mat2>& ops) {
  const std::size_t n = ops.size();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      cd v = 1.0;
      for (std::size_t q = 0; q < n; ++q) v *= ops[q][(r >> q) & 1][(c >> q) & 1];
      out(r, c) = v;
    }
  }
  return out;
}

inline Eigen::MatrixXcd dense_word(const PauliString& w) {
  std::vector<Mat2> ops;
  for (Pauli p : w.ops()) ops.push_back(pauli_matrix(p));
  return embed(ops);
}

inline Eigen::MatrixXcd dense_observable(const Observable& obs) {
  const Eigen::Index dim = Eigen::Index{1} << obs.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : obs.terms()) m += t.coeff * dense_word(t.word);
  return m;
}

inline Mat2 fixed_matrix(FixedKind k) {
  const double s = 1.0 / std::sqrt(2.0);
  const cd i{0.0, 1.0};
  switch (k) {
    case FixedKind::H: return {{{s, s}, {s, -s}}};
    case FixedKind::S: return {{{1.0, 0.0}, {0.0, i}}};
    case FixedKind::T: return {{{1.0, 0.0}, {0.0, std::exp(i * (std::numbers::pi / 4))}}};
    case FixedKind::X: return pauli_matrix(Pauli::X);
    case FixedKind::Y: return pauli_matrix(Pauli::Y);
    case FixedKind::Z: return pauli_matrix(Pauli::Z);
    default: return {};
  }
}

inline Eigen::MatrixXcd dense_two_qubit(std::size_t n, std::size_t w0, std::size_t w1,
                                        const std::vector<cd>& m4) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::Index mask = (Eigen::Index{1} << w0) | (Eigen::Index{1} << w1);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      const auto ri = 2 * ((r >> w0) & 1) + ((r >> w1) & 1);
      const auto ci = 2 * ((c >> w0) & 1) + ((c >> w1) & 1);
      out(r, c) = m4[static_cast<std::size_t>(ri * 4 + ci)];
    }
  }
  return out;
}

inline Eigen::MatrixXcd dense_gate(std::size_t n, const Gate& g, const std::vector<double>& theta) {
  if (const auto* r = std::get_if<RotationGate>(&g)) {
    const double t = theta[r->param];
    const Eigen::Index dim = Eigen::Index{1} << n;
    return std::cos(t / 2) * Eigen::MatrixXcd::Identity(dim, dim) - cd{0.0, std::sin(t / 2)} * dense_word(r->generator);
  }
  const auto& f = std::get<FixedGate>(g);
  if (f.kind == FixedKind::CNOT) {
    const std::vector<cd> cnot{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
    return dense_two_qubit(n, f.wires[0], f.wires[1], cnot);
  }
  if (f.kind == FixedKind::Custom && f.wires.size() == 2) return dense_two_qubit(n, f.wires[0], f.wires[1], f.matrix);
  std::vector<Mat2> ops(n, pauli_matrix(Pauli::I));
  if (f.kind == FixedKind::Custom)
    ops[f.wires[0]] = {{{f.matrix[0], f.matrix[1]}, {f.matrix[2], f.matrix[3]}}};
  else
    ops[f.wires[0]] = fixed_matrix(f.kind);
  return embed(ops);
}

inline Eigen::VectorXcd reference_state(const ParametrizedCircuit& c, const std::vector<double>& theta) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << c.num_qubits());
  psi(0) = 1.0;
  for (const auto& g : c.gates()) psi = dense_gate(c.num_qubits(), g, theta) * psi;
  return psi;
}

inline double reference_f(const ParametrizedCircuit& c, const Observable& obs, const std::vector<double>& theta) {
  const Eigen::VectorXcd psi = reference_state(c, theta);
  return (psi.adjoint() * dense_observable(obs) * psi)(0, 0).real();
}

// Random circuit with every parameter used once: layers of random fixed gates
// interleaved with single-qubit rotations and occasional multi-qubit Pauli-word rotations.
inline ParametrizedCircuit random_circuit(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> wire(0, n - 1);
  std::uniform_int_distribution<int> pick(0, 5);
  std::vector<Gate> gates;
  auto fixed = [&] {
    const int k = pick(rng);
    if (n >= 2 && k == 5) {
      const std::size_t c = wire(rng);
      std::size_t t = wire(rng);
      while (t == c) t = wire(rng);
      gates.emplace_back(make_cnot(c, t));
    } else {
      static constexpr FixedKind kinds[] = {FixedKind::H, FixedKind::S, FixedKind::T, FixedKind::H, FixedKind::Y};
      gates.emplace_back(make_fixed(kinds[k % 5], wire(rng)));
    }
  };
  std::vector<std::size_t> order(m);
  for (std::size_t j = 0; j < m; ++j) order[j] = j;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t j : order) {
    fixed();
    fixed();
    if (n >= 2 && pick(rng) == 0) {
      std::uniform_int_distribution<int> letter(0, 3);
      std::vector<Pauli> ops(n);
      for (auto& p : ops) p = static_cast<Pauli>(letter(rng));
      if (PauliString(ops).is_identity()) ops[0] = Pauli::X;
      gates.emplace_back(RotationGate{PauliString(ops), j});
    } else {
      static constexpr Pauli axes[] = {Pauli::X, Pauli::Y, Pauli::Z};
      gates.emplace_back(make_rotation(axes[pick(rng) % 3], n, wire(rng), j));
    }
  }
  fixed();
  return ParametrizedCircuit(n, m, std::move(gates));
}

inline Observable random_observable(std::size_t n, std::size_t terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<PauliTerm> out;
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<Pauli> ops(n);
    for (auto& p : ops) p = static_cast<Pauli>(letter(rng));
    out.push_back({coeff(rng), PauliString(ops)});
  }
  return Observable(n, std::move(out));
}

inline std::vector<double> random_theta(std::size_t m, std::mt19937_64& rng, double lo = -std::numbers::pi,
                                        double hi = std::numbers::pi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> t(m);
  for (auto& x : t) x = u(rng);
  return t;
}

// Mixed central differences at 0: tensor product of per-coordinate stencils
// for derivative orders 0..3 with step h.
template <class F>
double finite_difference_at_zero(F&& f, const std::vector<int>& alpha, double h = 1e-3) {
  static const std::vector<std::vector<std::pair<int, double>>> stencils = {
      {{0, 1.0}},
      {{1, 0.5}, {-1, -0.5}},
      {{1, 1.0}, {0, -2.0}, {-1, 1.0}},
      {{2, 0.5}, {1, -1.0}, {-1, 1.0}, {-2, -0.5}},
  };
  const std::size_t m = alpha.size();
  std::vector<std::size_t> idx(m, 0);
  double total = 0.0;
  while (true) {
    std::vector<double> x(m);
    double w = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      const auto& [off, coef] = stencils[static_cast<std::size_t>(alpha[j])][idx[j]];
      x[j] = off * h;
      w *= coef / std::pow(h, alpha[j]);
    }
    total += w * f(x);
    std::size_t j = 0;
    for (; j < m; ++j) {
      if (++idx[j] < stencils[static_cast<std::size_t>(alpha[j])].size()) break;
      idx[j] = 0;
    }
    if (j == m) break;
  }
  return total;
}

}  // namespace qsur::testing
