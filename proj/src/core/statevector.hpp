#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "core/circuit.hpp"
#include "core/pauli.hpp"

namespace tcq {

using state_vector = Eigen::VectorXcd;

state_vector zero_state(int n_qubits);
state_vector basis_state(int n_qubits, std::uint64_t index);

// Applies one gate in place; theta supplies slot-bound parameters and may be
// null when the circuit has none.
void apply_gate(state_vector& psi, const gate& g, const double* theta);

state_vector simulate(const circuit& c, const std::vector<double>& theta);
state_vector simulate(const circuit& c, const std::vector<double>& theta,
                      state_vector psi);

state_vector apply_pauli_sum(const pauli_sum& sum, const state_vector& psi);

// <psi| sum |psi> / <psi|psi>; complex because sums may be non-Hermitian.
cplx expectation(const pauli_sum& sum, const state_vector& psi);

}  // namespace tcq
