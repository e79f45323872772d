#include "core/mitigation.hpp"

#include <cmath>
#include <stdexcept>

namespace tcq {

circuit fold_global(const circuit& c, int scale) {
  if (scale < 1 || scale % 2 == 0)
    throw std::invalid_argument("fold scale must be a positive odd integer");
  circuit out = c;
  const circuit inv = inverse(c);
  for (int k = 0; k < (scale - 1) / 2; ++k) {
    for (const auto& g : inv.gates) out.gates.push_back(g);
    for (const auto& g : c.gates) out.gates.push_back(g);
  }
  return out;
}

double extrapolate_to_zero(const std::vector<double>& scales,
                           const std::vector<double>& values, int order) {
  if (scales.size() != values.size() || scales.empty())
    throw std::invalid_argument("scales and values must pair up");
  if (order < 0) throw std::invalid_argument("fit order must be nonnegative");
  const int n = static_cast<int>(scales.size());
  const int deg = std::min(order, n - 1);
  Eigen::MatrixXd v(n, deg + 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    double pw = 1.0;
    for (int j = 0; j <= deg; ++j) {
      v(i, j) = pw;
      pw *= scales[static_cast<std::size_t>(i)];
    }
    y(i) = values[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coef = v.colPivHouseholderQr().solve(y);
  return coef(0);
}

mitigation_record zero_noise_extrapolation(const circuit& c,
                                           const std::vector<double>& theta,
                                           const pauli_sum& h, const noise_model& nm,
                                           const zne_options& opt) {
  if (opt.scales.empty()) throw std::invalid_argument("need at least one fold scale");
  mitigation_record rec;
  rec.method = "zne";
  for (int s : opt.scales) {
    const circuit folded = fold_global(c, s);
    const double e = noisy_expectation(folded, theta, h, nm).real();
    rec.scales.push_back(static_cast<double>(s));
    rec.scale_values.push_back(e);
    if (s == 1) rec.raw = e;
  }
  rec.mitigated = extrapolate_to_zero(rec.scales, rec.scale_values, opt.fit_order);
  return rec;
}

mitigation_record reference_error_mitigation(const circuit& c,
                                             const std::vector<double>& theta,
                                             const pauli_sum& h, const noise_model& nm,
                                             const circuit& reference) {
  mitigation_record rec;
  rec.method = "rem";
  rec.raw = noisy_expectation(c, theta, h, nm).real();
  const std::vector<double> no_params(
      static_cast<std::size_t>(std::max(0, reference.n_parameters)), 0.0);
  noise_model ideal = nm;
  ideal.p1 = 0.0;
  ideal.p2 = 0.0;
  rec.reference_exact = noisy_expectation(reference, no_params, h, ideal).real();
  rec.reference_noisy = noisy_expectation(reference, no_params, h, nm).real();
  rec.mitigated = rec.raw - (rec.reference_noisy - rec.reference_exact);
  return rec;
}

Eigen::VectorXd readout_correct(const Eigen::VectorXd& probs, const noise_model& nm,
                                int n_qubits) {
  if (nm.readout.empty()) return probs;
  if (static_cast<int>(nm.readout.size()) != n_qubits)
    throw std::invalid_argument("readout confusion needs one entry per qubit");
  Eigen::VectorXd p = probs;
  const std::uint64_t dim = static_cast<std::uint64_t>(p.size());
  for (int q = 0; q < n_qubits; ++q) {
    const double p01 = nm.readout[static_cast<std::size_t>(q)][0];
    const double p10 = nm.readout[static_cast<std::size_t>(q)][1];
    if (p01 == 0.0 && p10 == 0.0) continue;
    const double det = 1.0 - p01 - p10;
    if (std::abs(det) < 1e-12)
      throw std::runtime_error("readout confusion matrix is singular");
    const std::uint64_t stride = std::uint64_t(1) << q;
    for (std::uint64_t base = 0; base < dim; base += 2 * stride)
      for (std::uint64_t low = 0; low < stride; ++low) {
        const Eigen::Index i0 = static_cast<Eigen::Index>(base | low);
        const Eigen::Index i1 = static_cast<Eigen::Index>(base | low | stride);
        const double v0 = p(i0), v1 = p(i1);
        p(i0) = ((1.0 - p10) * v0 - p10 * v1) / det;
        p(i1) = (-p01 * v0 + (1.0 - p01) * v1) / det;
      }
  }
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) < 0.0) p(i) = 0.0;
  const double total = p.sum();
  if (total > 0.0) p /= total;
  return p;
}

}  // namespace tcq
