#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/fermion.hpp"
#include "core/pauli.hpp"

namespace tcq {

enum class encoding_kind { jordan_wigner, parity, parity_reduced };

encoding_kind encoding_from_string(const std::string& name);
std::string encoding_to_string(encoding_kind k);

struct ladder_op {
  int index = 0;  // spin orbital, block order: alpha 0..N-1, beta N..2N-1
  bool dagger = false;
};

// Exact Pauli expansion of a product of ladder operators on n_spin_orbitals
// qubits. Jordan-Wigner: a_p = (prod_{q<p} Z_q)(X_p + iY_p)/2. Parity:
// a_j = 1/2 X_{>j}(Z_{j-1} X_j + i Y_j), creation flips the sign of the
// imaginary part.
pauli_sum map_ladder_product(const std::vector<ladder_op>& ops, int n_spin_orbitals,
                             encoding_kind enc = encoding_kind::jordan_wigner);

struct encoded_hamiltonian {
  pauli_sum pauli;
  encoding_kind encoding = encoding_kind::jordan_wigner;
  int n_electrons = 0;
  int n_alpha = 0;
  int n_spatial = 0;
  double truncation_threshold = 0.0;
  double removed_mass = 0.0;
};

// Assembles e0 + h1 + h2 (+ h3) in the chosen encoding with spin
// integration over the spatial tensors, tags terms by originating body
// class, and truncates at epsilon. parity_reduced runs the parity encoding
// and then the two-qubit taper.
encoded_hamiltonian encode(const fermion_hamiltonian& h, encoding_kind enc,
                           double epsilon = 1e-8);

// Replaces the alpha-parity qubit (N-1) and total-parity qubit (2N-1) of a
// parity-encoded sum by their sector eigenvalues (-1)^n_alpha and
// (-1)^n_electrons and deletes those qubits. Throws if any term
// anticommutes with either symmetry operator.
encoded_hamiltonian taper_two_qubits(const encoded_hamiltonian& h);

// HF occupation bitstring in the given encoding (value of qubit q at
// position q). Jordan-Wigner: aufbau occupations per spin block; parity:
// cumulative parities; parity_reduced: symmetry positions removed.
std::vector<int> hf_bitstring(int n_electrons, int n_alpha, int n_spatial,
                              encoding_kind enc);

std::uint64_t bitstring_to_index(const std::vector<int>& bits);

}  // namespace tcq
