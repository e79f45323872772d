#include "core/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace tcq {

namespace {

constexpr std::uint64_t one = 1;

// Visits each amplitude pair (i0, i1) split by qubit q exactly once.
template <typename F>
void for_each_pair(state_vector& psi, int q, F&& f) {
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  const std::uint64_t stride = one << q;
  for (std::uint64_t base = 0; base < dim; base += 2 * stride)
    for (std::uint64_t low = 0; low < stride; ++low) {
      const std::uint64_t i0 = base | low;
      f(psi[static_cast<Eigen::Index>(i0)], psi[static_cast<Eigen::Index>(i0 | stride)]);
    }
}

}  // namespace

state_vector zero_state(int n_qubits) { return basis_state(n_qubits, 0); }

state_vector basis_state(int n_qubits, std::uint64_t index) {
  if (n_qubits < 0 || n_qubits > 26) throw std::invalid_argument("bad qubit count");
  state_vector psi = state_vector::Zero(static_cast<Eigen::Index>(one << n_qubits));
  psi[static_cast<Eigen::Index>(index)] = 1.0;
  return psi;
}

void apply_gate(state_vector& psi, const gate& g, const double* theta) {
  double angle = g.angle;
  if (g.slot >= 0) {
    if (theta == nullptr) throw std::invalid_argument("parameterized gate without values");
    angle = g.scale * theta[g.slot];
  }
  switch (g.kind) {
    case gate_kind::ry: {
      const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
      for_each_pair(psi, g.q0, [&](cplx& a0, cplx& a1) {
        const cplx t0 = c * a0 - s * a1;
        a1 = s * a0 + c * a1;
        a0 = t0;
      });
      break;
    }
    case gate_kind::rx: {
      const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
      const cplx is(0.0, -s);
      for_each_pair(psi, g.q0, [&](cplx& a0, cplx& a1) {
        const cplx t0 = c * a0 + is * a1;
        a1 = is * a0 + c * a1;
        a0 = t0;
      });
      break;
    }
    case gate_kind::rz: {
      const cplx p0 = std::exp(cplx(0.0, -angle / 2.0));
      const cplx p1 = std::exp(cplx(0.0, angle / 2.0));
      for_each_pair(psi, g.q0, [&](cplx& a0, cplx& a1) {
        a0 *= p0;
        a1 *= p1;
      });
      break;
    }
    case gate_kind::h: {
      const double r = 1.0 / std::sqrt(2.0);
      for_each_pair(psi, g.q0, [&](cplx& a0, cplx& a1) {
        const cplx t0 = r * (a0 + a1);
        a1 = r * (a0 - a1);
        a0 = t0;
      });
      break;
    }
    case gate_kind::x: {
      for_each_pair(psi, g.q0, [&](cplx& a0, cplx& a1) { std::swap(a0, a1); });
      break;
    }
    case gate_kind::cnot: {
      const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
      const std::uint64_t cm = one << g.q0, tm = one << g.q1;
      for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & cm) && !(i & tm))
          std::swap(psi[static_cast<Eigen::Index>(i)],
                    psi[static_cast<Eigen::Index>(i | tm)]);
      break;
    }
  }
}

state_vector simulate(const circuit& c, const std::vector<double>& theta) {
  return simulate(c, theta, zero_state(c.n_qubits));
}

state_vector simulate(const circuit& c, const std::vector<double>& theta,
                      state_vector psi) {
  if (psi.size() != (static_cast<Eigen::Index>(one) << c.n_qubits))
    throw std::invalid_argument("initial state dimension mismatch");
  if (static_cast<int>(theta.size()) < c.n_parameters)
    throw std::invalid_argument("too few parameter values");
  for (const auto& g : c.gates) apply_gate(psi, g, theta.data());
  return psi;
}

state_vector apply_pauli_sum(const pauli_sum& sum, const state_vector& psi) {
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  state_vector out = state_vector::Zero(psi.size());
  for (const auto& [key, data] : sum.terms()) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      const cplx amp = psi[static_cast<Eigen::Index>(b)];
      if (amp == cplx(0.0, 0.0)) continue;
      out[static_cast<Eigen::Index>(b ^ key.x)] += data.coeff * basis_phase(key, b) * amp;
    }
  }
  return out;
}

cplx expectation(const pauli_sum& sum, const state_vector& psi) {
  const double norm2 = psi.squaredNorm();
  if (norm2 <= 0.0) throw std::invalid_argument("zero state in expectation");
  return psi.dot(apply_pauli_sum(sum, psi)) / norm2;
}

}  // namespace tcq
