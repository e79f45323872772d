#include "core/sampling.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace tcq {

std::vector<measurement_group> group_qubitwise(const pauli_sum& h) {
  if (!h.is_hermitian())
    throw std::invalid_argument("measurement grouping requires a Hermitian sum");
  std::vector<measurement_group> groups;
  measurement_group constant;  // identity members only
  for (const auto& [key, data] : h.terms()) {
    const double coeff = data.coeff.real();
    if (key.x == 0 && key.z == 0) {
      constant.members.push_back({key, coeff});
      continue;
    }
    bool placed = false;
    for (auto& g : groups) {
      const std::uint64_t both = (g.axes.x | g.axes.z) & (key.x | key.z);
      const std::uint64_t conflict = both & ((g.axes.x ^ key.x) | (g.axes.z ^ key.z));
      if (conflict != 0) continue;
      g.axes.x |= key.x;
      g.axes.z |= key.z;
      g.members.push_back({key, coeff});
      placed = true;
      break;
    }
    if (!placed) {
      measurement_group g;
      g.axes = key;
      g.members.push_back({key, coeff});
      groups.push_back(std::move(g));
    }
  }
  if (!constant.members.empty()) groups.insert(groups.begin(), std::move(constant));
  return groups;
}

namespace {

circuit with_basis_rotation(const circuit& c, axes_key axes) {
  circuit out = c;
  for (int q = 0; q < c.n_qubits; ++q) {
    const bool bx = (axes.x >> q) & 1, bz = (axes.z >> q) & 1;
    if (bx && bz)
      out.gates.push_back({gate_kind::rx, q, -1, constants::pi / 2.0, -1, 1.0});
    else if (bx)
      out.gates.push_back({gate_kind::h, q, -1, 0.0, -1, 1.0});
  }
  return out;
}

std::uint64_t sample_index(const Eigen::VectorXd& probs, rng_engine& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  double r = coin(rng) * probs.sum();
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    r -= probs(i);
    if (r <= 0.0) return static_cast<std::uint64_t>(i);
  }
  return static_cast<std::uint64_t>(probs.size() - 1);
}

}  // namespace

sampled_value sample_expectation(const circuit& c, const std::vector<double>& theta,
                                 const pauli_sum& h, std::uint64_t shots_per_group,
                                 const noise_model& nm, std::uint64_t seed) {
  if (shots_per_group == 0) throw std::invalid_argument("shot count must be positive");
  nm.validate(c.n_qubits);
  const auto groups = group_qubitwise(h);
  rng_engine rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  sampled_value out;
  out.shots_per_group = shots_per_group;
  double var_sum = 0.0;
  for (const auto& g : groups) {
    if (g.axes.x == 0 && g.axes.z == 0) {
      for (const auto& [key, coeff] : g.members) out.constant += coeff;
      continue;
    }
    ++out.groups;
    const circuit meas = with_basis_rotation(c, g.axes);
    double sum = 0.0, sum_sq = 0.0;
    if (c.n_qubits <= density_matrix_qubit_cap) {
      Eigen::VectorXd probs = outcome_probabilities(simulate_density(meas, theta, nm));
      probs = apply_readout_confusion(probs, nm, c.n_qubits);
      for (std::uint64_t s = 0; s < shots_per_group; ++s) {
        const std::uint64_t b = sample_index(probs, rng);
        double y = 0.0;
        for (const auto& [key, coeff] : g.members)
          y += coeff * (std::popcount(b & (key.x | key.z)) % 2 == 0 ? 1.0 : -1.0);
        sum += y;
        sum_sq += y * y;
      }
    } else {
      for (std::uint64_t s = 0; s < shots_per_group; ++s) {
        const state_vector psi = simulate_trajectory(meas, theta, nm, rng);
        std::uint64_t b = sample_index(outcome_probabilities(psi), rng);
        for (int q = 0; q < c.n_qubits && !nm.readout.empty(); ++q) {
          const auto& r = nm.readout[static_cast<std::size_t>(q)];
          const bool set = (b >> q) & 1;
          const double flip = set ? r[1] : r[0];
          if (flip > 0.0 && coin(rng) < flip) b ^= std::uint64_t(1) << q;
        }
        double y = 0.0;
        for (const auto& [key, coeff] : g.members)
          y += coeff * (std::popcount(b & (key.x | key.z)) % 2 == 0 ? 1.0 : -1.0);
        sum += y;
        sum_sq += y * y;
      }
    }
    const double n = static_cast<double>(shots_per_group);
    const double mean = sum / n;
    out.mean += mean;
    if (shots_per_group > 1) {
      const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
      var_sum += var / n;
    }
  }
  out.mean += out.constant;
  out.std_error = std::sqrt(var_sum);
  return out;
}

}  // namespace tcq
