#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace tcq {

using cplx = std::complex<double>;

// Second-quantized Hamiltonian over N spatial orbitals:
//   E0 + sum_pq h1[p,q] a+_p a_q
//      + 1/2 sum_pqrs h2[(pq|rs)] a+_p a+_r a_s a_q     (chemist convention)
//      - 1/6 sum L[pq,rs,tu] a+_p a+_r a+_t a_u a_s a_q
// with spin summation done at encoding time (spatial tensors in,
// spin-orbital operators out). Non-Hermitian (transcorrelated) inputs keep
// only the particle-exchange symmetry (pq|rs) = (rs|pq) in h2.
struct fermion_hamiltonian {
  int n_spatial = 0;
  int n_electrons = 0;
  int n_alpha = 0;
  bool hermitian = true;
  cplx e0{0.0, 0.0};
  std::vector<cplx> h1;              // [p*N + q]
  std::vector<cplx> h2;              // [((p*N+q)*N+r)*N + s] = (pq|rs)
  std::optional<std::vector<double>> h3;  // 6-index L, pair-permutation symmetric

  cplx& h1_at(int p, int q) { return h1[static_cast<std::size_t>(p) * n_spatial + q]; }
  cplx h1_at(int p, int q) const { return h1[static_cast<std::size_t>(p) * n_spatial + q]; }
  cplx& h2_at(int p, int q, int r, int s) {
    const std::size_t n = static_cast<std::size_t>(n_spatial);
    return h2[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }
  cplx h2_at(int p, int q, int r, int s) const {
    const std::size_t n = static_cast<std::size_t>(n_spatial);
    return h2[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }
  double h3_at(int p, int q, int r, int s, int t, int u) const {
    const std::size_t n = static_cast<std::size_t>(n_spatial);
    return (*h3)[((((static_cast<std::size_t>(p) * n + q) * n + r) * n + s) * n + t) * n + u];
  }
  double& h3_at(int p, int q, int r, int s, int t, int u) {
    const std::size_t n = static_cast<std::size_t>(n_spatial);
    return (*h3)[((((static_cast<std::size_t>(p) * n + q) * n + r) * n + s) * n + t) * n + u];
  }

  void resize_tensors();
  // Verifies the declared symmetry (8-fold for hermitian, particle
  // exchange otherwise) to the given tolerance; throws on violation.
  void check_symmetry(double tol = 1e-12) const;
};

// Extended FCIDUMP reader. Namelist keys NORB, NELEC, MS2 are required;
// HERMITIAN=0|1 (default 1) and THREEBODY=0|1 (default 0) extend the
// format. Hermitian files expand declared entries to the full 8-fold
// permutation set; non-Hermitian files apply only (pq|rs) = (rs|pq).
// A &TCDUMP line introduces 6-index three-body entries, expanded over the
// 6 permutations of the (creation, annihilation) index pairs.
fermion_hamiltonian load_fcidump(const std::string& path);
fermion_hamiltonian parse_fcidump(const std::string& text, const std::string& origin);

void write_fcidump(const fermion_hamiltonian& h, const std::string& path,
                   double tol = 1e-14);

}  // namespace tcq
