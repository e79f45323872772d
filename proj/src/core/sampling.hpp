#pragma once

#include <cstdint>
#include <vector>

#include "core/circuit.hpp"
#include "core/noise.hpp"
#include "core/pauli.hpp"

namespace tcq {

// One simultaneously measurable set of qubit-wise commuting terms. axes
// holds the per-qubit measurement basis covering every member; members keep
// their original coefficients.
struct measurement_group {
  axes_key axes{0, 0};
  std::vector<std::pair<axes_key, double>> members;
};

// Greedy first-fit grouping: a term joins a group when on every qubit its
// axis matches the group's, either side being the identity. Identity terms
// land in a leading constant group.
std::vector<measurement_group> group_qubitwise(const pauli_sum& h);

struct sampled_value {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t shots_per_group = 0;
  int groups = 0;
  double constant = 0.0;  // identity contribution folded into mean
};

// Estimates <H> by sampling shots_per_group bitstrings for every measurement
// group. The Hamiltonian must be Hermitian. Noise enters through the
// density-matrix path when the register fits, stochastic trajectories
// otherwise; readout confusion applies in both.
sampled_value sample_expectation(const circuit& c, const std::vector<double>& theta,
                                 const pauli_sum& h, std::uint64_t shots_per_group,
                                 const noise_model& nm, std::uint64_t seed);

}  // namespace tcq
