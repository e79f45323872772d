#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/fermion.hpp"

namespace tcq {

struct mp2no_result {
  fermion_hamiltonian truncated;
  // Spatial natural-orbital occupations, occupied block first, each block
  // sorted descending; length n_spatial of the input.
  std::vector<double> occupations;
  Eigen::MatrixXd density;    // spatial MP2 one-particle density, trace n_electrons
  Eigen::MatrixXd rotation;   // n_spatial x n_keep, kept NO columns in the MO basis
  double mp2_correlation = 0.0;
  double hf_energy = 0.0;     // reference determinant energy including e0
};

// Builds MP2 natural orbitals from a closed-shell Hermitian Hamiltonian in a
// canonical MO basis and truncates to the n_keep most occupied spatial
// orbitals. Requires n_alpha == n_beta and n_keep >= n_occupied.
mp2no_result mp2_natural_orbitals(const fermion_hamiltonian& h, int n_keep);

}  // namespace tcq
