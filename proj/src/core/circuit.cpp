#include "core/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "core/constants.hpp"

namespace tcq {

void circuit::append(const circuit& other) {
  if (other.n_qubits != n_qubits)
    throw std::invalid_argument("qubit count mismatch in circuit append");
  for (const auto& g : other.gates) gates.push_back(g);
  n_parameters = std::max(n_parameters, other.n_parameters);
}

std::string circuit::dump() const {
  std::ostringstream os;
  os << "qubits=" << n_qubits << " parameters=" << n_parameters << "\n";
  for (const auto& g : gates) {
    switch (g.kind) {
      case gate_kind::ry:
        os << "ry";
        break;
      case gate_kind::rx:
        os << "rx";
        break;
      case gate_kind::rz:
        os << "rz";
        break;
      case gate_kind::h:
        os << "h";
        break;
      case gate_kind::x:
        os << "x";
        break;
      case gate_kind::cnot:
        os << "cnot";
        break;
    }
    os << " " << g.q0;
    if (g.kind == gate_kind::cnot) os << " " << g.q1;
    if (g.kind == gate_kind::ry || g.kind == gate_kind::rx || g.kind == gate_kind::rz) {
      if (g.slot >= 0)
        os << " slot=" << g.slot << " scale=" << g.scale;
      else
        os << " angle=" << g.angle;
    }
    os << "\n";
  }
  return os.str();
}

circuit_stats_t circuit_stats(const circuit& c) {
  circuit_stats_t s;
  s.parameters = c.n_parameters;
  s.gates = static_cast<int>(c.gates.size());
  std::vector<int> qubit_layer(static_cast<std::size_t>(c.n_qubits), 0);
  for (const auto& g : c.gates) {
    if (g.kind == gate_kind::cnot) ++s.cnots;
    int layer = qubit_layer[static_cast<std::size_t>(g.q0)];
    if (g.q1 >= 0) layer = std::max(layer, qubit_layer[static_cast<std::size_t>(g.q1)]);
    ++layer;
    qubit_layer[static_cast<std::size_t>(g.q0)] = layer;
    if (g.q1 >= 0) qubit_layer[static_cast<std::size_t>(g.q1)] = layer;
    s.depth = std::max(s.depth, layer);
  }
  return s;
}

circuit build_hea(int n_qubits, int layers) {
  if (n_qubits < 1 || layers < 0) throw std::invalid_argument("bad HEA shape");
  circuit c;
  c.n_qubits = n_qubits;
  c.n_parameters = n_qubits * (layers + 1);
  int slot = 0;
  for (int q = 0; q < n_qubits; ++q)
    c.gates.push_back({gate_kind::ry, q, -1, 0.0, slot++, 1.0});
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q + 1 < n_qubits; ++q)
      c.gates.push_back({gate_kind::cnot, q, q + 1, 0.0, -1, 1.0});
    for (int q = 0; q < n_qubits; ++q)
      c.gates.push_back({gate_kind::ry, q, -1, 0.0, slot++, 1.0});
  }
  return c;
}

circuit build_state_prep(const std::vector<int>& bitstring) {
  circuit c;
  c.n_qubits = static_cast<int>(bitstring.size());
  for (std::size_t q = 0; q < bitstring.size(); ++q)
    if (bitstring[q]) c.gates.push_back({gate_kind::x, static_cast<int>(q), -1, 0.0, -1, 1.0});
  return c;
}

void append_pauli_exponential(circuit& c, axes_key key, int n_qubits, int slot,
                              double gamma) {
  // Implements exp(i gamma theta_slot P) (or exp(i gamma P) when slot < 0)
  // for the Pauli string P given by key: basis changes map P to a Z
  // string, a CNOT ladder collects its parity, Rz(-2 gamma theta) applies
  // the phase, and both are undone.
  std::vector<int> support;
  for (int q = 0; q < n_qubits; ++q)
    if (((key.x | key.z) >> q) & 1) support.push_back(q);
  if (support.empty()) return;  // identity: global phase only
  const double half_pi = constants::pi / 2.0;
  for (int q : support) {
    const bool bx = (key.x >> q) & 1, bz = (key.z >> q) & 1;
    if (bx && bz)
      c.gates.push_back({gate_kind::rx, q, -1, half_pi, -1, 1.0});
    else if (bx)
      c.gates.push_back({gate_kind::h, q, -1, 0.0, -1, 1.0});
  }
  for (std::size_t k = 0; k + 1 < support.size(); ++k)
    c.gates.push_back({gate_kind::cnot, support[k], support[k + 1], 0.0, -1, 1.0});
  const int target = support.back();
  if (slot >= 0)
    c.gates.push_back({gate_kind::rz, target, -1, 0.0, slot, -2.0 * gamma});
  else
    c.gates.push_back({gate_kind::rz, target, -1, -2.0 * gamma, -1, 1.0});
  for (std::size_t k = support.size() - 1; k-- > 0;)
    c.gates.push_back({gate_kind::cnot, support[k], support[k + 1], 0.0, -1, 1.0});
  for (int q : support) {
    const bool bx = (key.x >> q) & 1, bz = (key.z >> q) & 1;
    if (bx && bz)
      c.gates.push_back({gate_kind::rx, q, -1, -half_pi, -1, 1.0});
    else if (bx)
      c.gates.push_back({gate_kind::h, q, -1, 0.0, -1, 1.0});
  }
}

namespace {

pauli_sum excitation_generator(const std::vector<ladder_op>& creation_part,
                               int n_spin_orbitals, encoding_kind enc, int n_spatial,
                               int n_electrons, int n_alpha) {
  const encoding_kind base =
      enc == encoding_kind::parity_reduced ? encoding_kind::parity : enc;
  pauli_sum t = map_ladder_product(creation_part, n_spin_orbitals, base);
  std::vector<ladder_op> adj(creation_part.rbegin(), creation_part.rend());
  for (auto& op : adj) op.dagger = !op.dagger;
  pauli_sum tdag = map_ladder_product(adj, n_spin_orbitals, base);
  tdag *= cplx(-1.0, 0.0);
  t += tdag;
  if (enc == encoding_kind::parity_reduced) {
    encoded_hamiltonian tmp;
    tmp.pauli = std::move(t);
    tmp.encoding = encoding_kind::parity;
    tmp.n_spatial = n_spatial;
    tmp.n_electrons = n_electrons;
    tmp.n_alpha = n_alpha;
    return taper_two_qubits(tmp).pauli;
  }
  return t;
}

}  // namespace

circuit build_uccsd(int n_spatial, int n_electrons, int n_alpha, encoding_kind enc) {
  const int m = 2 * n_spatial;
  const int n_beta = n_electrons - n_alpha;
  std::vector<int> occ, virt;
  for (int p = 0; p < n_alpha; ++p) occ.push_back(p);
  for (int p = n_alpha; p < n_spatial; ++p) virt.push_back(p);
  for (int p = 0; p < n_beta; ++p) occ.push_back(n_spatial + p);
  for (int p = n_beta; p < n_spatial; ++p) virt.push_back(n_spatial + p);
  const auto spin_of = [n_spatial](int so) { return so < n_spatial ? 0 : 1; };

  std::vector<std::vector<ladder_op>> excitations;
  for (int i : occ)
    for (int a : virt)
      if (spin_of(i) == spin_of(a))
        excitations.push_back({{a, true}, {i, false}});
  for (std::size_t i1 = 0; i1 < occ.size(); ++i1)
    for (std::size_t i2 = i1 + 1; i2 < occ.size(); ++i2)
      for (std::size_t a1 = 0; a1 < virt.size(); ++a1)
        for (std::size_t a2 = a1 + 1; a2 < virt.size(); ++a2) {
          const int si = spin_of(occ[i1]) + spin_of(occ[i2]);
          const int sa = spin_of(virt[a1]) + spin_of(virt[a2]);
          if (si != sa) continue;
          excitations.push_back(
              {{virt[a1], true}, {virt[a2], true}, {occ[i2], false}, {occ[i1], false}});
        }

  circuit c;
  c.n_qubits = enc == encoding_kind::parity_reduced ? m - 2 : m;
  c.n_parameters = static_cast<int>(excitations.size());
  const auto hf = hf_bitstring(n_electrons, n_alpha, n_spatial, enc);
  c.append(build_state_prep(hf));

  for (std::size_t k = 0; k < excitations.size(); ++k) {
    pauli_sum g = excitation_generator(excitations[k], m, enc, n_spatial, n_electrons,
                                       n_alpha);
    for (const auto& [key, data] : g.terms()) {
      // G is anti-Hermitian, so each coefficient is i*gamma with gamma real;
      // exp(theta G) factorizes because the terms of one excitation commute.
      if (std::abs(data.coeff.real()) > 1e-12)
        throw std::logic_error("excitation generator has a Hermitian component");
      append_pauli_exponential(c, key, c.n_qubits, static_cast<int>(k),
                               data.coeff.imag());
    }
  }
  return c;
}

circuit inverse(const circuit& c) {
  circuit inv;
  inv.n_qubits = c.n_qubits;
  inv.n_parameters = c.n_parameters;
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    gate g = *it;
    if (g.kind == gate_kind::ry || g.kind == gate_kind::rx || g.kind == gate_kind::rz) {
      g.angle = -g.angle;
      g.scale = -g.scale;
    }
    inv.gates.push_back(g);
  }
  return inv;
}

}  // namespace tcq
