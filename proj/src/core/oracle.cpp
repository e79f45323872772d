#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tcq {

std::vector<int> eig_result::ground_indices(double tol) const {
  std::vector<int> out;
  if (values.size() == 0) return out;
  double lo = values[0].real();
  for (Eigen::Index i = 1; i < values.size(); ++i) lo = std::min(lo, values[i].real());
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values[i].real() - lo <= tol) out.push_back(static_cast<int>(i));
  return out;
}

eig_result dense_eig(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("eigensolver needs a square nonempty matrix");
  eig_result out;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("Hermitian eigensolver failed to converge");
    out.hermitian = true;
    out.values = es.eigenvalues().cast<cplx>();
    out.right = es.eigenvectors();
    out.left = es.eigenvectors();
    return out;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, true);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge");
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const cplx va = es.eigenvalues()(a), vb = es.eigenvalues()(b);
    if (va.real() != vb.real()) return va.real() < vb.real();
    return va.imag() < vb.imag();
  });
  out.values.resize(n);
  out.right.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(order[static_cast<std::size_t>(i)]);
    out.right.col(i) = es.eigenvectors().col(order[static_cast<std::size_t>(i)]);
    out.right.col(i).normalize();
  }
  // Rows of the inverse give left eigenvectors that are automatically
  // bi-orthonormal against the right set.
  Eigen::MatrixXcd rinv = out.right.fullPivLu().solve(Eigen::MatrixXcd::Identity(n, n));
  out.left = rinv.adjoint();
  if ((out.left.adjoint() * out.right - Eigen::MatrixXcd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff() > 1e-8)
    throw std::runtime_error("eigenvector basis is numerically singular");
  return out;
}

eig_result dense_eig(const pauli_sum& sum, int max_qubits) {
  return dense_eig(sum.to_dense(max_qubits));
}

pauli_sum similarity_transform(const pauli_sum& h, const std::vector<double>& j) {
  const int n = h.n_qubits();
  const std::uint64_t dim = std::uint64_t(1) << n;
  if (n > 12) throw std::invalid_argument("similarity transform capped at 12 qubits");
  if (j.size() != dim)
    throw std::invalid_argument("correlator vector needs one entry per basis state");
  for (double v : j)
    if (!(std::abs(v) <= 2.0))
      throw std::invalid_argument("correlator entries must satisfy |j| <= 2");
  if (!h.is_hermitian())
    throw std::invalid_argument("similarity transform requires a Hermitian input");

  Eigen::MatrixXcd m = h.to_dense(n);
  for (std::uint64_t a = 0; a < dim; ++a)
    for (std::uint64_t b = 0; b < dim; ++b)
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *=
          std::exp(j[b] - j[a]);

  pauli_sum out(n);
  const double inv_dim = 1.0 / static_cast<double>(dim);
  for (std::uint64_t x = 0; x < dim; ++x)
    for (std::uint64_t z = 0; z < dim; ++z) {
      const axes_key key{x, z};
      cplx c(0.0, 0.0);
      for (std::uint64_t b = 0; b < dim; ++b)
        c += std::conj(basis_phase(key, b)) *
             m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b));
      c *= inv_dim;
      out.add_term(key, c);
    }
  return out;
}

double basis_weight(const Eigen::VectorXcd& psi, std::uint64_t index) {
  const double norm = psi.norm();
  if (norm <= 0.0) throw std::invalid_argument("zero vector in basis weight");
  return std::abs(psi[static_cast<Eigen::Index>(index)]) / norm;
}

}  // namespace tcq
