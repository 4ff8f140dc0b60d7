#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qsurrogate/circuit.hpp"
#include "qsurrogate/pauli.hpp"

namespace qsur {

using StateVector = std::vector<std::complex<double>>;

/// U(theta)|0...0> by dense state-vector simulation.
StateVector simulate(const ParametrizedCircuit& circuit, std::span<const double> theta);

/// <state| P |state>, complex so callers can inspect the rounding residue.
std::complex<double> pauli_expectation(std::span<const std::complex<double>> state, const PauliString& word);

/// sum_t a_t <state|Q_t|state>. Throws NumericError if the imaginary residue exceeds 1e-10.
double expectation(std::span<const std::complex<double>> state, const Observable& obs);

/// f(theta) = <psi(theta)| M |psi(theta)>.
double f_eval(const ParametrizedCircuit& circuit, const Observable& obs, std::span<const double> theta);

}  // namespace qsur
