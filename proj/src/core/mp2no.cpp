#include "core/mp2no.hpp"

#include <cmath>
#include <stdexcept>

namespace tcq {

namespace {

double real_part_checked(cplx v, const char* what) {
  if (std::abs(v.imag()) > 1e-12)
    throw std::invalid_argument(std::string("complex ") + what +
                                " not supported by the MP2 transform");
  return v.real();
}

}  // namespace

mp2no_result mp2_natural_orbitals(const fermion_hamiltonian& h, int n_keep) {
  if (!h.hermitian) throw std::invalid_argument("MP2 requires a Hermitian Hamiltonian");
  if (h.h3.has_value())
    throw std::invalid_argument("MP2 transform does not accept three-body terms");
  if (h.n_electrons % 2 != 0 || h.n_alpha * 2 != h.n_electrons)
    throw std::invalid_argument("MP2 transform requires a closed shell");
  const int n = h.n_spatial;
  const int no = h.n_alpha;
  const int nv = n - no;
  if (n_keep < no || n_keep > n)
    throw std::invalid_argument("orbital keep count outside [n_occupied, n_spatial]");

  Eigen::MatrixXd h1(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) h1(p, q) = real_part_checked(h.h1_at(p, q), "h1");
  std::vector<double> g(static_cast<std::size_t>(n) * n * n * n);
  const auto gi = [n](int p, int q, int r, int s) {
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          g[gi(p, q, r, s)] = real_part_checked(h.h2_at(p, q, r, s), "h2");

  // Canonical orbital energies from the Fock diagonal of the reference
  // determinant; the inputs are produced in such a basis.
  std::vector<double> eps(n);
  for (int p = 0; p < n; ++p) {
    double e = h1(p, p);
    for (int i = 0; i < no; ++i) e += 2.0 * g[gi(p, p, i, i)] - g[gi(p, i, i, p)];
    eps[p] = e;
  }
  double e_hf = h.e0;
  for (int i = 0; i < no; ++i) {
    e_hf += 2.0 * h1(i, i);
    for (int j = 0; j < no; ++j) e_hf += 2.0 * g[gi(i, i, j, j)] - g[gi(i, j, j, i)];
  }

  // Spin orbitals in block order: alpha 0..n-1, beta n..2n-1.
  const int m = 2 * n;
  const auto spatial = [n](int p) { return p < n ? p : p - n; };
  const auto spin = [n](int p) { return p < n ? 0 : 1; };
  const auto occupied = [n, no](int p) { return (p < n ? p : p - n) < no; };
  const auto phys = [&](int p, int q, int r, int s) {
    double v = 0.0;
    if (spin(p) == spin(r) && spin(q) == spin(s))
      v = g[gi(spatial(p), spatial(r), spatial(q), spatial(s))];
    return v;
  };
  const auto anti = [&](int p, int q, int r, int s) {
    return phys(p, q, r, s) - phys(p, q, s, r);
  };

  std::vector<int> socc, svirt;
  for (int p = 0; p < m; ++p) (occupied(p) ? socc : svirt).push_back(p);
  const int nso = static_cast<int>(socc.size()), nsv = static_cast<int>(svirt.size());
  std::vector<double> t(static_cast<std::size_t>(nso) * nso * nsv * nsv);
  const auto ti = [nso, nsv](int i, int j, int a, int b) {
    return ((static_cast<std::size_t>(i) * nso + j) * nsv + a) * nsv + b;
  };
  double e2 = 0.0;
  for (int i = 0; i < nso; ++i)
    for (int j = 0; j < nso; ++j)
      for (int a = 0; a < nsv; ++a)
        for (int b = 0; b < nsv; ++b) {
          const double num = anti(socc[i], socc[j], svirt[a], svirt[b]);
          const double den = eps[spatial(socc[i])] + eps[spatial(socc[j])] -
                             eps[spatial(svirt[a])] - eps[spatial(svirt[b])];
          if (std::abs(den) < 1e-10)
            throw std::runtime_error("vanishing MP2 denominator");
          t[ti(i, j, a, b)] = num / den;
          e2 += 0.25 * num * t[ti(i, j, a, b)];
        }

  // Occupied block carries the depletion with a minus sign so that the total
  // trace stays at the electron count.
  Eigen::MatrixXd docc = Eigen::MatrixXd::Zero(nso, nso);
  for (int i = 0; i < nso; ++i)
    for (int j = 0; j < nso; ++j) {
      double v = i == j ? 1.0 : 0.0;
      if (spin(socc[i]) == spin(socc[j])) {
        double s = 0.0;
        for (int k = 0; k < nso; ++k)
          for (int a = 0; a < nsv; ++a)
            for (int b = 0; b < nsv; ++b) s += t[ti(i, k, a, b)] * t[ti(j, k, a, b)];
        v -= 0.5 * s;
      }
      docc(i, j) = v;
    }
  Eigen::MatrixXd dvirt = Eigen::MatrixXd::Zero(nsv, nsv);
  for (int a = 0; a < nsv; ++a)
    for (int b = 0; b < nsv; ++b) {
      if (spin(svirt[a]) != spin(svirt[b])) continue;
      double s = 0.0;
      for (int i = 0; i < nso; ++i)
        for (int j = 0; j < nso; ++j)
          for (int c = 0; c < nsv; ++c) s += t[ti(i, j, a, c)] * t[ti(i, j, b, c)];
      dvirt(a, b) = 0.5 * s;
    }

  // Fold the spin blocks onto spatial orbitals.
  Eigen::MatrixXd density = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < nso; ++i)
    for (int j = 0; j < nso; ++j)
      if (spin(socc[i]) == spin(socc[j]))
        density(spatial(socc[i]), spatial(socc[j])) += docc(i, j);
  for (int a = 0; a < nsv; ++a)
    for (int b = 0; b < nsv; ++b)
      if (spin(svirt[a]) == spin(svirt[b]))
        density(spatial(svirt[a]), spatial(svirt[b])) += dvirt(a, b);

  // Diagonalize each spatial block separately so occupied and virtual
  // orbitals never mix and the reference determinant is preserved.
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> occs(static_cast<std::size_t>(n));
  if (no > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(density.topLeftCorner(no, no));
    for (int k = 0; k < no; ++k) {
      occs[static_cast<std::size_t>(k)] = es.eigenvalues()(no - 1 - k);
      u.block(0, k, no, 1) = es.eigenvectors().col(no - 1 - k);
    }
  }
  if (nv > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        density.bottomRightCorner(nv, nv));
    for (int k = 0; k < nv; ++k) {
      occs[static_cast<std::size_t>(no + k)] = es.eigenvalues()(nv - 1 - k);
      u.block(no, no + k, nv, 1) = es.eigenvectors().col(nv - 1 - k);
    }
  }

  mp2no_result out;
  out.occupations = occs;
  out.density = density;
  out.rotation = u.leftCols(n_keep);
  out.mp2_correlation = e2;
  out.hf_energy = e_hf;

  const int k = n_keep;
  const Eigen::MatrixXd& r = out.rotation;
  out.truncated.n_spatial = k;
  out.truncated.n_electrons = h.n_electrons;
  out.truncated.n_alpha = h.n_alpha;
  out.truncated.hermitian = true;
  out.truncated.e0 = h.e0;
  out.truncated.resize_tensors();
  Eigen::MatrixXd h1t = r.transpose() * h1 * r;
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) out.truncated.h1_at(p, q) = h1t(p, q);

  std::vector<double> g1(static_cast<std::size_t>(k) * n * n * n);
  std::vector<double> g2(static_cast<std::size_t>(k) * k * n * n);
  std::vector<double> g3(static_cast<std::size_t>(k) * k * k * n);
  const auto i1 = [n, k](int p, int b, int c, int d) {
    (void)k;
    return ((static_cast<std::size_t>(p) * n + b) * n + c) * n + d;
  };
  const auto i2 = [n, k](int p, int q, int c, int d) {
    return ((static_cast<std::size_t>(p) * k + q) * n + c) * n + d;
  };
  const auto i3 = [n, k](int p, int q, int r_, int d) {
    return ((static_cast<std::size_t>(p) * k + q) * k + r_) * n + d;
  };
  for (int p = 0; p < k; ++p)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int a = 0; a < n; ++a) s += r(a, p) * g[gi(a, b, c, d)];
          g1[i1(p, b, c, d)] = s;
        }
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int b = 0; b < n; ++b) s += r(b, q) * g1[i1(p, b, c, d)];
          g2[i2(p, q, c, d)] = s;
        }
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q)
      for (int rr = 0; rr < k; ++rr)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int c = 0; c < n; ++c) s += r(c, rr) * g2[i2(p, q, c, d)];
          g3[i3(p, q, rr, d)] = s;
        }
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q)
      for (int rr = 0; rr < k; ++rr)
        for (int ss = 0; ss < k; ++ss) {
          double s = 0.0;
          for (int d = 0; d < n; ++d) s += r(d, ss) * g3[i3(p, q, rr, d)];
          out.truncated.h2_at(p, q, rr, ss) = s;
        }
  return out;
}

}  // namespace tcq
