#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "core/circuit.hpp"
#include "core/pauli.hpp"
#include "core/statevector.hpp"

namespace tcq {

enum class derivative_mode { finite_difference, parameter_shift, hadamard_test };

derivative_mode derivative_mode_from_string(const std::string& s);
std::string to_string(derivative_mode m);

struct evolution_config {
  double dtau = 0.05;
  int max_steps = 400;
  double residual_tol = 1e-6;
  int persistence = 5;        // consecutive sub-tolerance steps before stopping
  double svd_cutoff = 1e-8;   // relative singular-value cutoff for the solve
  derivative_mode mode = derivative_mode::parameter_shift;
  double fd_delta = 1e-3;
  std::string trajectory_path;  // CSV written per step when nonempty
  bool resume = false;          // continue from the last row of trajectory_path
};

struct evolution_result {
  std::vector<double> theta;
  cplx energy{0.0, 0.0};
  double residual = 0.0;
  int steps = 0;  // rows produced in total, including any resumed prefix
  bool converged = false;
};

// McLachlan metric and gradient at theta:
//   A_ij = Re <d_i Phi | d_j Phi>   (symmetrized)
//   C_i  = Re <d_i Phi | H | Phi>
// in the printed forms without a global-phase correction.
struct mclachlan_system {
  Eigen::MatrixXd a;
  Eigen::VectorXd c;
  cplx energy{0.0, 0.0};
};

mclachlan_system build_mclachlan(const circuit& ansatz, const pauli_sum& h,
                                 const std::vector<double>& theta,
                                 derivative_mode mode, double fd_delta = 1e-3);

// Least-squares solve of A x = -C with relative SVD cutoff; x is theta_dot.
Eigen::VectorXd solve_mclachlan(const mclachlan_system& sys, double svd_cutoff);

evolution_result evolve(const circuit& ansatz, const pauli_sum& h,
                        std::vector<double> theta0, const evolution_config& cfg);

}  // namespace tcq
