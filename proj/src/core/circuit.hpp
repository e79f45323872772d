#pragma once

#include <string>
#include <vector>

#include "core/encode.hpp"
#include "core/pauli.hpp"

namespace tcq {

enum class gate_kind { ry, rx, rz, h, x, cnot };

// A gate is either fixed (slot < 0, `angle` used) or parameterized
// (slot >= 0, applied angle = scale * theta[slot]).
struct gate {
  gate_kind kind = gate_kind::x;
  int q0 = 0;
  int q1 = -1;  // CNOT target; -1 otherwise
  double angle = 0.0;
  int slot = -1;
  double scale = 1.0;
};

struct circuit {
  int n_qubits = 0;
  int n_parameters = 0;
  std::vector<gate> gates;

  void append(const circuit& other);
  // One gate per line, for inspection and golden-file tests.
  std::string dump() const;
};

struct circuit_stats_t {
  int parameters = 0;
  int gates = 0;
  int cnots = 0;
  int depth = 0;  // greedy layering on qubit-disjointness
};

circuit_stats_t circuit_stats(const circuit& c);

// Hardware-efficient ansatz: (layers+1) rotation layers of n Ry gates
// interleaved with `layers` linear-chain CNOT blocks; n*(layers+1)
// parameters.
circuit build_hea(int n_qubits, int layers);

// X gates preparing the given computational-basis bitstring from |0...0>.
circuit build_state_prep(const std::vector<int>& bitstring);

// UCCSD with one parameter per spin-conserving single and double
// excitation, singles first, lexicographic order within each class. Each
// excitation exp(theta (T - T+)) is compiled as a product of Pauli-string
// exponentials (basis change, CNOT ladder, Rz, undo). HF preparation is
// prepended. Returns the circuit in the requested encoding's qubit count.
circuit build_uccsd(int n_spatial, int n_electrons, int n_alpha, encoding_kind enc);

// Appends gates implementing exp(i phi P) for every term (phi real,
// coefficient of P must be i*gamma with gamma real when slot >= 0 scaling
// is used). Used by the UCCSD compiler; exposed for tests.
void append_pauli_exponential(circuit& c, axes_key key, int n_qubits, int slot,
                              double scale_times_two_gamma);

// The inverse circuit (dagger); parameterized gates keep their slot with
// negated scale.
circuit inverse(const circuit& c);

}  // namespace tcq
