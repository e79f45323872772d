#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "core/circuit.hpp"
#include "core/pauli.hpp"
#include "core/statevector.hpp"

namespace tcq {

using rng_engine = std::mt19937_64;

struct noise_model {
  // Depolarizing probability after every one- and two-qubit gate.
  double p1 = 1e-3;
  double p2 = 1e-2;
  // Per-qubit readout confusion {P(read 1 | true 0), P(read 0 | true 1)};
  // empty means ideal readout.
  std::vector<std::array<double, 2>> readout;

  bool depolarizing() const { return p1 > 0.0 || p2 > 0.0; }
  bool confused() const;
  void validate(int n_qubits) const;
};

using density_matrix = Eigen::MatrixXcd;

// Exact noisy simulation; capped at density_matrix_qubit_cap qubits. With
// both depolarizing rates zero this returns |psi><psi| of the noiseless run.
inline constexpr int density_matrix_qubit_cap = 6;
density_matrix simulate_density(const circuit& c, const std::vector<double>& theta,
                                const noise_model& nm);

// One stochastic Pauli-error trajectory for registers past the cap.
state_vector simulate_trajectory(const circuit& c, const std::vector<double>& theta,
                                 const noise_model& nm, rng_engine& rng);

Eigen::VectorXd outcome_probabilities(const density_matrix& rho);
Eigen::VectorXd outcome_probabilities(const state_vector& psi);

// Applies the per-qubit confusion matrices to a probability vector.
Eigen::VectorXd apply_readout_confusion(const Eigen::VectorXd& probs,
                                        const noise_model& nm, int n_qubits);

// <H> under the noise model via the density-matrix path, readout ignored.
cplx noisy_expectation(const circuit& c, const std::vector<double>& theta,
                       const pauli_sum& h, const noise_model& nm);

}  // namespace tcq
