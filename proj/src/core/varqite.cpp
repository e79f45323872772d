#include "core/varqite.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tcq {

derivative_mode derivative_mode_from_string(const std::string& s) {
  if (s == "finite-difference" || s == "fd") return derivative_mode::finite_difference;
  if (s == "parameter-shift") return derivative_mode::parameter_shift;
  if (s == "hadamard-test") return derivative_mode::hadamard_test;
  throw std::invalid_argument("unknown derivative mode: " + s);
}

std::string to_string(derivative_mode m) {
  switch (m) {
    case derivative_mode::finite_difference:
      return "finite-difference";
    case derivative_mode::parameter_shift:
      return "parameter-shift";
    case derivative_mode::hadamard_test:
      return "hadamard-test";
  }
  return "";
}

namespace {

struct insertion {
  int position;   // index of the rotation gate in the circuit
  axes_key gen;   // Pauli generator of that rotation
  double scale;   // gate scale; d/dtheta R(scale*theta) = (-i scale G / 2) R
};

axes_key rotation_generator(const gate& g) {
  const std::uint64_t bit = std::uint64_t(1) << g.q0;
  switch (g.kind) {
    case gate_kind::rx:
      return {bit, 0};
    case gate_kind::ry:
      return {bit, bit};
    case gate_kind::rz:
      return {0, bit};
    default:
      throw std::logic_error("no generator for a non-rotation gate");
  }
}

std::vector<std::vector<insertion>> slot_insertions(const circuit& c) {
  std::vector<std::vector<insertion>> slots(
      static_cast<std::size_t>(c.n_parameters));
  for (std::size_t pos = 0; pos < c.gates.size(); ++pos) {
    const gate& g = c.gates[pos];
    if (g.slot < 0) continue;
    slots[static_cast<std::size_t>(g.slot)].push_back(
        {static_cast<int>(pos), rotation_generator(g), g.scale});
  }
  return slots;
}

// Applies the Pauli string of key to amplitudes whose control qubit matches
// control_value; extra multiplies on top of the string's intrinsic phase.
void apply_pauli_controlled(state_vector& psi, axes_key key, int control_qubit,
                            int control_value, cplx extra) {
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  const std::uint64_t cbit = std::uint64_t(1) << control_qubit;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (static_cast<int>((b & cbit) != 0) != control_value) continue;
    const std::uint64_t p = b ^ key.x;
    if (p < b) continue;  // each swap pair handled once
    const cplx ph_b = extra * basis_phase(key, b);
    if (p == b) {
      psi[static_cast<Eigen::Index>(b)] *= ph_b;
    } else {
      const cplx ph_p = extra * basis_phase(key, p);
      const cplx tmp = psi[static_cast<Eigen::Index>(b)];
      psi[static_cast<Eigen::Index>(b)] = ph_p * psi[static_cast<Eigen::Index>(p)];
      psi[static_cast<Eigen::Index>(p)] = ph_b * tmp;
    }
  }
}

// |W> = U_rest G U_prefix |0>, the raw inserted state without -i scale/2.
state_vector inserted_state(const circuit& c, const std::vector<double>& theta,
                            int position, axes_key gen) {
  state_vector psi = zero_state(c.n_qubits);
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    apply_gate(psi, c.gates[k], theta.data());
    if (static_cast<int>(k) == position) {
      state_vector w = state_vector::Zero(psi.size());
      const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
      for (std::uint64_t b = 0; b < dim; ++b)
        w[static_cast<Eigen::Index>(b ^ gen.x)] +=
            basis_phase(gen, b) * psi[static_cast<Eigen::Index>(b)];
      psi = std::move(w);
    }
  }
  return psi;
}

std::vector<state_vector> derivative_states_exact(
    const circuit& c, const std::vector<double>& theta,
    const std::vector<std::vector<insertion>>& slots) {
  std::vector<state_vector> out;
  out.reserve(slots.size());
  for (const auto& slot : slots) {
    state_vector d = state_vector::Zero(Eigen::Index(1) << c.n_qubits);
    for (const auto& ins : slot) {
      const state_vector w = inserted_state(c, theta, ins.position, ins.gen);
      d += cplx(0.0, -0.5 * ins.scale) * w;
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<state_vector> derivative_states_fd(const circuit& c,
                                               const std::vector<double>& theta,
                                               double delta) {
  const state_vector base = simulate(c, theta);
  std::vector<state_vector> out;
  out.reserve(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    std::vector<double> shifted = theta;
    shifted[i] += delta;
    out.push_back((simulate(c, shifted) - base) / delta);
  }
  return out;
}

// Prepares (|0>_anc A + |1>_anc B)/sqrt(2) on n+1 qubits, where A carries the
// a-side insertion anti-controlled on the ancilla, B the b-side insertion and
// the optional trailing Pauli controlled on it, and the shared ansatz gates
// run uncontrolled.
struct branch_spec {
  int position = -1;  // -1 means no insertion
  axes_key gen{0, 0};
  cplx phase{1.0, 0.0};
};

state_vector ancilla_pair_state(const circuit& c, const std::vector<double>& theta,
                                const branch_spec& a, const branch_spec& b,
                                const std::optional<axes_key>& b_tail) {
  const int anc = c.n_qubits;
  state_vector psi = zero_state(c.n_qubits + 1);
  apply_gate(psi, {gate_kind::h, anc, -1, 0.0, -1, 1.0}, nullptr);
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    apply_gate(psi, c.gates[k], theta.data());
    if (a.position == static_cast<int>(k))
      apply_pauli_controlled(psi, a.gen, anc, 0, a.phase);
    if (b.position == static_cast<int>(k))
      apply_pauli_controlled(psi, b.gen, anc, 1, b.phase);
  }
  if (b_tail) apply_pauli_controlled(psi, *b_tail, anc, 1, cplx(1.0, 0.0));
  return psi;
}

double ancilla_z(const state_vector& psi, int anc) {
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  const std::uint64_t bit = std::uint64_t(1) << anc;
  double z = 0.0;
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double p = std::norm(psi[static_cast<Eigen::Index>(b)]);
    z += (b & bit) ? -p : p;
  }
  return z;
}

// <X_anc> read out through H, <Y_anc> through Rx(pi/2); these equal
// Re<A|B> and Im<A|B> of the two branches.
std::pair<double, double> ancilla_xy(const state_vector& psi, int anc) {
  state_vector hx = psi;
  apply_gate(hx, {gate_kind::h, anc, -1, 0.0, -1, 1.0}, nullptr);
  state_vector ry = psi;
  apply_gate(ry, {gate_kind::rx, anc, -1, constants::pi / 2.0, -1, 1.0}, nullptr);
  return {ancilla_z(hx, anc), ancilla_z(ry, anc)};
}

mclachlan_system build_from_states(const std::vector<state_vector>& d,
                                   const pauli_sum& h, const state_vector& phi) {
  const int p = static_cast<int>(d.size());
  mclachlan_system sys;
  sys.a.resize(p, p);
  sys.c.resize(p);
  const state_vector hphi = apply_pauli_sum(h, phi);
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      const double v = d[static_cast<std::size_t>(i)]
                           .dot(d[static_cast<std::size_t>(j)])
                           .real();
      sys.a(i, j) = v;
      sys.a(j, i) = v;
    }
    sys.c(i) = d[static_cast<std::size_t>(i)].dot(hphi).real();
  }
  sys.energy = phi.dot(hphi) / phi.squaredNorm();
  return sys;
}

mclachlan_system build_hadamard(const circuit& ansatz, const pauli_sum& h,
                                const std::vector<double>& theta,
                                const std::vector<std::vector<insertion>>& slots) {
  const int p = static_cast<int>(slots.size());
  const int anc = ansatz.n_qubits;
  mclachlan_system sys;
  sys.a.resize(p, p);
  sys.c.setZero(p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      double aij = 0.0;
      for (const auto& gi : slots[static_cast<std::size_t>(i)])
        for (const auto& gj : slots[static_cast<std::size_t>(j)]) {
          // The two -i derivative phases cancel inside Re<W|W'>.
          branch_spec a{gi.position, gi.gen, cplx(1.0, 0.0)};
          branch_spec b{gj.position, gj.gen, cplx(1.0, 0.0)};
          const state_vector psi = ancilla_pair_state(ansatz, theta, a, b, {});
          state_vector hx = psi;
          apply_gate(hx, {gate_kind::h, anc, -1, 0.0, -1, 1.0}, nullptr);
          aij += 0.25 * gi.scale * gj.scale * ancilla_z(hx, anc);
        }
      sys.a(i, j) = aij;
      sys.a(j, i) = aij;
    }
  // C_i = sum over rotations g in slot i and Hamiltonian terms t of
  // (s_g/2) Re[i c_t <W_g|P_t|Phi>]; the ancilla X readout supplies the
  // Hermitian half (Re c_t) and the Y readout the anti-Hermitian half.
  for (int i = 0; i < p; ++i) {
    double ci = 0.0;
    for (const auto& gi : slots[static_cast<std::size_t>(i)]) {
      for (const auto& [key, data] : h.terms()) {
        branch_spec a;  // bare ansatz branch
        branch_spec b{gi.position, gi.gen, cplx(0.0, -1.0)};
        const state_vector psi =
            ancilla_pair_state(ansatz, theta, a, b, std::optional<axes_key>(key));
        const auto [x, y] = ancilla_xy(psi, anc);
        ci += 0.5 * gi.scale * (data.coeff.real() * x + data.coeff.imag() * y);
      }
    }
    sys.c(i) = ci;
  }
  const state_vector phi = simulate(ansatz, theta);
  sys.energy = expectation(h, phi);
  return sys;
}

}  // namespace

mclachlan_system build_mclachlan(const circuit& ansatz, const pauli_sum& h,
                                 const std::vector<double>& theta,
                                 derivative_mode mode, double fd_delta) {
  if (static_cast<int>(theta.size()) != ansatz.n_parameters)
    throw std::invalid_argument("parameter count mismatch");
  if (h.n_qubits() > ansatz.n_qubits)
    throw std::invalid_argument("Hamiltonian acts on more qubits than the ansatz");
  const auto slots = slot_insertions(ansatz);
  switch (mode) {
    case derivative_mode::finite_difference: {
      const auto d = derivative_states_fd(ansatz, theta, fd_delta);
      return build_from_states(d, h, simulate(ansatz, theta));
    }
    case derivative_mode::parameter_shift: {
      const auto d = derivative_states_exact(ansatz, theta, slots);
      return build_from_states(d, h, simulate(ansatz, theta));
    }
    case derivative_mode::hadamard_test:
      return build_hadamard(ansatz, h, theta, slots);
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXd solve_mclachlan(const mclachlan_system& sys, double svd_cutoff) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.a,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(svd_cutoff);
  return svd.solve(-sys.c);
}

namespace {

void write_trajectory_row(std::ofstream& os, int step, double tau,
                          const std::vector<double>& theta, cplx e, double residual) {
  char buf[32];
  os << step << "," << tau;
  const auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << "," << buf;
  };
  for (double t : theta) put(t);
  put(e.real());
  put(e.imag());
  put(residual);
  os << "\n";
}

struct resume_state {
  int next_step = 0;
  double tau = 0.0;
  std::vector<double> theta;
  int streak = 0;
  bool have_rows = false;
};

resume_state read_trajectory(const std::string& path, int n_parameters,
                             double residual_tol) {
  resume_state rs;
  std::ifstream is(path);
  if (!is) return rs;
  std::string line;
  if (!std::getline(is, line)) return rs;  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(std::stod(cell));
    if (static_cast<int>(cells.size()) != n_parameters + 5)
      throw std::runtime_error("trajectory row width mismatch in " + path);
    rs.next_step = static_cast<int>(cells[0]) + 1;
    rs.tau = cells[1];
    rs.theta.assign(cells.begin() + 2, cells.begin() + 2 + n_parameters);
    const double residual = cells.back();
    rs.streak = residual < residual_tol ? rs.streak + 1 : 0;
    rs.have_rows = true;
  }
  return rs;
}

}  // namespace

evolution_result evolve(const circuit& ansatz, const pauli_sum& h,
                        std::vector<double> theta0, const evolution_config& cfg) {
  if (static_cast<int>(theta0.size()) != ansatz.n_parameters)
    throw std::invalid_argument("parameter count mismatch");
  if (cfg.dtau <= 0.0) throw std::invalid_argument("step size must be positive");

  std::vector<double> theta = std::move(theta0);
  double tau = 0.0;
  int step = 0;
  int streak = 0;
  std::ofstream traj;
  if (!cfg.trajectory_path.empty()) {
    bool append = false;
    if (cfg.resume) {
      resume_state rs =
          read_trajectory(cfg.trajectory_path, ansatz.n_parameters, cfg.residual_tol);
      if (rs.have_rows) {
        // The stored row holds theta before its Euler update; redo the update
        // from a fresh solve so the continued flow matches an uninterrupted run.
        mclachlan_system sys =
            build_mclachlan(ansatz, h, rs.theta, cfg.mode, cfg.fd_delta);
        const Eigen::VectorXd dot = solve_mclachlan(sys, cfg.svd_cutoff);
        for (int i = 0; i < ansatz.n_parameters; ++i)
          rs.theta[static_cast<std::size_t>(i)] += cfg.dtau * dot(i);
        theta = rs.theta;
        tau = rs.tau + cfg.dtau;
        step = rs.next_step;
        streak = rs.streak;
        append = true;
      }
    }
    traj.open(cfg.trajectory_path, append ? std::ios::app : std::ios::trunc);
    if (!traj) throw std::runtime_error("cannot open " + cfg.trajectory_path);
    if (!append) {
      traj << "step,tau";
      for (int i = 0; i < ansatz.n_parameters; ++i) traj << ",theta" << i;
      traj << ",energy_re,energy_im,residual\n";
    }
  }

  evolution_result out;
  while (step < cfg.max_steps) {
    mclachlan_system sys = build_mclachlan(ansatz, h, theta, cfg.mode, cfg.fd_delta);
    const Eigen::VectorXd dot = solve_mclachlan(sys, cfg.svd_cutoff);
    const double residual = dot.norm();
    if (traj.is_open()) {
      write_trajectory_row(traj, step, tau, theta, sys.energy, residual);
      traj.flush();
    }
    out.theta = theta;
    out.energy = sys.energy;
    out.residual = residual;
    out.steps = step + 1;
    streak = residual < cfg.residual_tol ? streak + 1 : 0;
    if (streak >= cfg.persistence) {
      out.converged = true;
      return out;
    }
    for (int i = 0; i < ansatz.n_parameters; ++i)
      theta[static_cast<std::size_t>(i)] += cfg.dtau * dot(i);
    tau += cfg.dtau;
    ++step;
  }
  return out;
}

}  // namespace tcq
