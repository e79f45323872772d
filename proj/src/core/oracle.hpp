#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "core/pauli.hpp"

namespace tcq {

struct eig_result {
  Eigen::VectorXcd values;   // sorted ascending by (Re, Im)
  Eigen::MatrixXcd right;    // right eigenvectors, one per column
  // Left eigenvectors, one per column, scaled so left.adjoint() * right = I.
  // For a Hermitian input left and right coincide.
  Eigen::MatrixXcd left;
  bool hermitian = false;

  // Indices of all eigenvalues whose real part lies within tol of the lowest.
  std::vector<int> ground_indices(double tol = 1e-9) const;
};

eig_result dense_eig(const Eigen::MatrixXcd& m);
eig_result dense_eig(const pauli_sum& sum, int max_qubits = 14);

// Similarity transform M' = D^-1 M D with D = exp(diag(j)); j holds one real
// entry per basis state with |j| <= 2, and the input must be Hermitian. The
// result is re-decomposed in the Pauli basis and is non-Hermitian whenever
// the transform acts nontrivially.
pauli_sum similarity_transform(const pauli_sum& h, const std::vector<double>& j);

// |<basis index|psi>| / ||psi||.
double basis_weight(const Eigen::VectorXcd& psi, std::uint64_t index);

}  // namespace tcq
