#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "core/circuit.hpp"
#include "core/noise.hpp"
#include "core/pauli.hpp"

namespace tcq {

// Global folding: scale must be odd; scale 2k+1 yields C (C^-1 C)^k, which
// leaves the ideal state unchanged while multiplying the noise exposure.
circuit fold_global(const circuit& c, int scale);

// Least-squares polynomial fit of (scale, value) pairs evaluated at zero.
// The order is clamped to the number of points minus one.
double extrapolate_to_zero(const std::vector<double>& scales,
                           const std::vector<double>& values, int order);

struct mitigation_record {
  std::string method;
  double raw = 0.0;
  double mitigated = 0.0;
  std::vector<double> scales;
  std::vector<double> scale_values;
  double reference_exact = 0.0;
  double reference_noisy = 0.0;
};

struct zne_options {
  std::vector<int> scales{1, 3, 5};
  int fit_order = 1;
};

// Zero-noise extrapolation of <H> over globally folded circuits, evaluated
// on the exact density-matrix path.
mitigation_record zero_noise_extrapolation(const circuit& c,
                                           const std::vector<double>& theta,
                                           const pauli_sum& h, const noise_model& nm,
                                           const zne_options& opt = {});

// Reference-state error mitigation: subtracts the noise-induced shift
// measured on a reference circuit whose exact energy is known.
mitigation_record reference_error_mitigation(const circuit& c,
                                             const std::vector<double>& theta,
                                             const pauli_sum& h, const noise_model& nm,
                                             const circuit& reference);

// Inverts per-qubit readout confusion on a probability vector, clipping
// negative entries and renormalizing.
Eigen::VectorXd readout_correct(const Eigen::VectorXd& probs, const noise_model& nm,
                                int n_qubits);

}  // namespace tcq
