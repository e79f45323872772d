#include "core/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace tcq {

namespace {

constexpr std::uint64_t one = 1;

axes_key axis_key(int axis, int q) {
  // axis: 1 = X, 2 = Y, 3 = Z
  const std::uint64_t bit = one << q;
  switch (axis) {
    case 1:
      return {bit, 0};
    case 2:
      return {bit, bit};
    case 3:
      return {0, bit};
    default:
      throw std::logic_error("bad axis");
  }
}

density_matrix pauli_conjugate(const density_matrix& rho, axes_key key) {
  const Eigen::Index dim = rho.rows();
  density_matrix out(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    const cplx pa = std::conj(basis_phase(key, static_cast<std::uint64_t>(a)));
    for (Eigen::Index b = 0; b < dim; ++b) {
      const cplx pb = basis_phase(key, static_cast<std::uint64_t>(b));
      out(a, b) = pa * pb *
                  rho(static_cast<Eigen::Index>(static_cast<std::uint64_t>(a) ^ key.x),
                      static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^ key.x));
    }
  }
  return out;
}

void apply_unitary_dm(density_matrix& rho, const gate& g, const double* theta) {
  const Eigen::Index dim = rho.rows();
  state_vector col(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    col = rho.col(j);
    apply_gate(col, g, theta);
    rho.col(j) = col;
  }
  density_matrix adj = rho.adjoint();
  for (Eigen::Index j = 0; j < dim; ++j) {
    col = adj.col(j);
    apply_gate(col, g, theta);
    adj.col(j) = col;
  }
  rho = adj.adjoint();
}

void depolarize1(density_matrix& rho, int q, double p) {
  density_matrix mix = density_matrix::Zero(rho.rows(), rho.cols());
  for (int axis = 1; axis <= 3; ++axis) mix += pauli_conjugate(rho, axis_key(axis, q));
  rho = (1.0 - p) * rho + (p / 3.0) * mix;
}

void depolarize2(density_matrix& rho, int q0, int q1, double p) {
  density_matrix mix = density_matrix::Zero(rho.rows(), rho.cols());
  for (int a0 = 0; a0 <= 3; ++a0)
    for (int a1 = 0; a1 <= 3; ++a1) {
      if (a0 == 0 && a1 == 0) continue;
      axes_key key{0, 0};
      if (a0 != 0) {
        const axes_key k = axis_key(a0, q0);
        key.x |= k.x;
        key.z |= k.z;
      }
      if (a1 != 0) {
        const axes_key k = axis_key(a1, q1);
        key.x |= k.x;
        key.z |= k.z;
      }
      mix += pauli_conjugate(rho, key);
    }
  rho = (1.0 - p) * rho + (p / 15.0) * mix;
}

void apply_pauli_inplace(state_vector& psi, axes_key key) {
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const std::uint64_t p = b ^ key.x;
    if (p < b) continue;
    if (p == b) {
      psi[static_cast<Eigen::Index>(b)] *= basis_phase(key, b);
    } else {
      const cplx tmp = psi[static_cast<Eigen::Index>(b)];
      psi[static_cast<Eigen::Index>(b)] =
          basis_phase(key, p) * psi[static_cast<Eigen::Index>(p)];
      psi[static_cast<Eigen::Index>(p)] = basis_phase(key, b) * tmp;
    }
  }
}

}  // namespace

bool noise_model::confused() const {
  for (const auto& r : readout)
    if (r[0] != 0.0 || r[1] != 0.0) return true;
  return false;
}

void noise_model::validate(int n_qubits) const {
  if (p1 < 0.0 || p1 > 1.0 || p2 < 0.0 || p2 > 1.0)
    throw std::invalid_argument("depolarizing probabilities must lie in [0, 1]");
  if (!readout.empty() && static_cast<int>(readout.size()) != n_qubits)
    throw std::invalid_argument("readout confusion needs one entry per qubit");
  for (const auto& r : readout)
    if (r[0] < 0.0 || r[0] > 1.0 || r[1] < 0.0 || r[1] > 1.0)
      throw std::invalid_argument("confusion probabilities must lie in [0, 1]");
}

density_matrix simulate_density(const circuit& c, const std::vector<double>& theta,
                                const noise_model& nm) {
  nm.validate(c.n_qubits);
  if (c.n_qubits > density_matrix_qubit_cap)
    throw std::invalid_argument("density-matrix path capped at " +
                                std::to_string(density_matrix_qubit_cap) + " qubits");
  if (!nm.depolarizing()) {
    const state_vector psi = simulate(c, theta);
    return psi * psi.adjoint();
  }
  const Eigen::Index dim = Eigen::Index(1) << c.n_qubits;
  density_matrix rho = density_matrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  for (const auto& g : c.gates) {
    apply_unitary_dm(rho, g, theta.data());
    if (g.kind == gate_kind::cnot) {
      if (nm.p2 > 0.0) depolarize2(rho, g.q0, g.q1, nm.p2);
    } else if (nm.p1 > 0.0) {
      depolarize1(rho, g.q0, nm.p1);
    }
  }
  return rho;
}

state_vector simulate_trajectory(const circuit& c, const std::vector<double>& theta,
                                 const noise_model& nm, rng_engine& rng) {
  nm.validate(c.n_qubits);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick1(1, 3);
  std::uniform_int_distribution<int> pick15(1, 15);
  state_vector psi = zero_state(c.n_qubits);
  for (const auto& g : c.gates) {
    apply_gate(psi, g, theta.data());
    if (g.kind == gate_kind::cnot) {
      if (nm.p2 > 0.0 && coin(rng) < nm.p2) {
        const int r = pick15(rng);  // base-4 digit pair, 0 excluded
        const int a0 = r % 4, a1 = r / 4;
        axes_key key{0, 0};
        if (a0 != 0) {
          const axes_key k = axis_key(a0, g.q0);
          key.x |= k.x;
          key.z |= k.z;
        }
        if (a1 != 0) {
          const axes_key k = axis_key(a1, g.q1);
          key.x |= k.x;
          key.z |= k.z;
        }
        apply_pauli_inplace(psi, key);
      }
    } else if (nm.p1 > 0.0 && coin(rng) < nm.p1) {
      apply_pauli_inplace(psi, axis_key(pick1(rng), g.q0));
    }
  }
  return psi;
}

Eigen::VectorXd outcome_probabilities(const density_matrix& rho) {
  return rho.diagonal().real();
}

Eigen::VectorXd outcome_probabilities(const state_vector& psi) {
  Eigen::VectorXd p(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) p(i) = std::norm(psi(i));
  return p;
}

Eigen::VectorXd apply_readout_confusion(const Eigen::VectorXd& probs,
                                        const noise_model& nm, int n_qubits) {
  if (nm.readout.empty()) return probs;
  if (static_cast<int>(nm.readout.size()) != n_qubits)
    throw std::invalid_argument("readout confusion needs one entry per qubit");
  Eigen::VectorXd p = probs;
  for (int q = 0; q < n_qubits; ++q) {
    const double p01 = nm.readout[static_cast<std::size_t>(q)][0];
    const double p10 = nm.readout[static_cast<std::size_t>(q)][1];
    if (p01 == 0.0 && p10 == 0.0) continue;
    const std::uint64_t stride = one << q;
    const std::uint64_t dim = static_cast<std::uint64_t>(p.size());
    for (std::uint64_t base = 0; base < dim; base += 2 * stride)
      for (std::uint64_t low = 0; low < stride; ++low) {
        const Eigen::Index i0 = static_cast<Eigen::Index>(base | low);
        const Eigen::Index i1 = static_cast<Eigen::Index>(base | low | stride);
        const double v0 = p(i0), v1 = p(i1);
        p(i0) = (1.0 - p01) * v0 + p10 * v1;
        p(i1) = p01 * v0 + (1.0 - p10) * v1;
      }
  }
  return p;
}

cplx noisy_expectation(const circuit& c, const std::vector<double>& theta,
                       const pauli_sum& h, const noise_model& nm) {
  const density_matrix rho = simulate_density(c, theta, nm);
  const std::uint64_t dim = static_cast<std::uint64_t>(rho.rows());
  cplx e(0.0, 0.0);
  for (const auto& [key, data] : h.terms()) {
    cplx tr(0.0, 0.0);
    for (std::uint64_t a = 0; a < dim; ++a)
      tr += std::conj(basis_phase(key, a)) *
            rho(static_cast<Eigen::Index>(a ^ key.x), static_cast<Eigen::Index>(a));
    e += data.coeff * tr;
  }
  return e;
}

}  // namespace tcq
