#include "core/encode.hpp"

#include <cmath>
#include <stdexcept>

namespace tcq {

encoding_kind encoding_from_string(const std::string& name) {
  if (name == "jordan-wigner" || name == "jw") return encoding_kind::jordan_wigner;
  if (name == "parity") return encoding_kind::parity;
  if (name == "parity-reduced") return encoding_kind::parity_reduced;
  throw std::invalid_argument("unknown encoding: " + name);
}

std::string encoding_to_string(encoding_kind k) {
  switch (k) {
    case encoding_kind::jordan_wigner:
      return "jordan-wigner";
    case encoding_kind::parity:
      return "parity";
    case encoding_kind::parity_reduced:
      return "parity-reduced";
  }
  throw std::logic_error("bad encoding_kind");
}

namespace {

pauli_sum ladder_factor(int j, bool dagger, int m, encoding_kind enc) {
  pauli_sum out(m);
  const std::uint64_t bit = 1ull << j;
  if (enc == encoding_kind::jordan_wigner) {
    const std::uint64_t zbelow = bit - 1;
    out.add_term({bit, zbelow}, cplx(0.5, 0.0));
    out.add_term({bit, zbelow | bit}, cplx(0.0, dagger ? -0.5 : 0.5));
  } else {
    std::uint64_t xabove = 0;
    for (int k = j; k < m; ++k) xabove |= 1ull << k;
    const std::uint64_t zprev = j > 0 ? (1ull << (j - 1)) : 0;
    out.add_term({xabove, zprev}, cplx(0.5, 0.0));
    out.add_term({xabove, bit}, cplx(0.0, dagger ? -0.5 : 0.5));
  }
  return out;
}

}  // namespace

pauli_sum map_ladder_product(const std::vector<ladder_op>& ops, int n_spin_orbitals,
                             encoding_kind enc) {
  if (enc == encoding_kind::parity_reduced)
    throw std::invalid_argument("ladder products are mapped before tapering");
  pauli_sum acc(n_spin_orbitals);
  acc.add_term({0, 0}, cplx(1.0, 0.0));
  for (const auto& op : ops) {
    if (op.index < 0 || op.index >= n_spin_orbitals)
      throw std::invalid_argument("spin-orbital index out of range");
    acc = multiply(acc, ladder_factor(op.index, op.dagger, n_spin_orbitals, enc));
  }
  return acc;
}

encoded_hamiltonian encode(const fermion_hamiltonian& h, encoding_kind enc,
                           double epsilon) {
  const int n = h.n_spatial;
  const int m = 2 * n;
  const encoding_kind base =
      enc == encoding_kind::parity_reduced ? encoding_kind::parity : enc;

  // Cache single ladder factors; products below reuse them.
  std::vector<pauli_sum> ann(m), cre(m);
  for (int j = 0; j < m; ++j) {
    ann[j] = ladder_factor(j, false, m, base);
    cre[j] = ladder_factor(j, true, m, base);
  }
  const auto so = [n](int p, int spin) { return p + spin * n; };

  pauli_sum total(m);
  if (std::abs(h.e0) >= zero_floor)
    total.add_term({0, 0}, h.e0, body_class::scalar);

  auto accumulate = [&total](pauli_sum term_sum, cplx weight, int tag) {
    term_sum *= weight;
    for (const auto& [key, data] : term_sum.terms()) total.add_term(key, data.coeff, tag);
  };

  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const cplx v = h.h1_at(p, q);
      if (std::abs(v) < 1e-14) continue;
      for (int s = 0; s < 2; ++s)
        accumulate(multiply(cre[so(p, s)], ann[so(q, s)]), v, body_class::one_body);
    }

  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const cplx v = h.h2_at(p, q, r, s);
          if (std::abs(v) < 1e-14) continue;
          for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) {
              auto prod = multiply(multiply(cre[so(p, s1)], cre[so(r, s2)]),
                                   multiply(ann[so(s, s2)], ann[so(q, s1)]));
              accumulate(std::move(prod), 0.5 * v, body_class::two_body);
            }
        }

  if (h.h3) {
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
              for (int u = 0; u < n; ++u) {
                const double v = h.h3_at(p, q, r, s, t, u);
                if (std::abs(v) < 1e-14) continue;
                for (int s1 = 0; s1 < 2; ++s1)
                  for (int s2 = 0; s2 < 2; ++s2)
                    for (int s3 = 0; s3 < 2; ++s3) {
                      auto prod = multiply(
                          multiply(cre[so(p, s1)], cre[so(r, s2)]),
                          multiply(cre[so(t, s3)],
                                   multiply(ann[so(u, s3)],
                                            multiply(ann[so(s, s2)], ann[so(q, s1)]))));
                      accumulate(std::move(prod), -v / 6.0, body_class::three_body);
                    }
              }
  }

  encoded_hamiltonian out;
  out.encoding = base;
  out.n_electrons = h.n_electrons;
  out.n_alpha = h.n_alpha;
  out.n_spatial = n;
  out.truncation_threshold = epsilon;
  out.removed_mass = total.truncate(epsilon);
  out.pauli = std::move(total);
  if (enc == encoding_kind::parity_reduced) return taper_two_qubits(out);
  return out;
}

encoded_hamiltonian taper_two_qubits(const encoded_hamiltonian& h) {
  if (h.encoding != encoding_kind::parity)
    throw std::invalid_argument("two-qubit reduction requires the parity encoding");
  const int n = h.n_spatial;
  const int m = 2 * n;
  if (h.pauli.n_qubits() != m)
    throw std::invalid_argument("qubit count inconsistent with spatial orbital count");
  const std::uint64_t sym_a = 1ull << (n - 1);
  const std::uint64_t sym_t = 1ull << (m - 1);
  const double eig_a = (h.n_alpha % 2) ? -1.0 : 1.0;
  const double eig_t = (h.n_electrons % 2) ? -1.0 : 1.0;

  pauli_sum reduced(m - 2);
  for (const auto& [key, data] : h.pauli.terms()) {
    if (key.x & (sym_a | sym_t))
      throw std::runtime_error(
          "term anticommutes with a tapering symmetry operator; "
          "check spin-orbital ordering and input integrity");
    double factor = 1.0;
    if (key.z & sym_a) factor *= eig_a;
    if (key.z & sym_t) factor *= eig_t;
    axes_key nk;
    for (int q = 0; q < m; ++q) {
      if (q == n - 1 || q == m - 1) continue;
      const int nq = q < n - 1 ? q : q - 1;
      if ((key.x >> q) & 1) nk.x |= 1ull << nq;
      if ((key.z >> q) & 1) nk.z |= 1ull << nq;
    }
    reduced.add_term(nk, data.coeff * factor, data.tag);
  }

  encoded_hamiltonian out = h;
  out.encoding = encoding_kind::parity_reduced;
  out.pauli = std::move(reduced);
  return out;
}

std::vector<int> hf_bitstring(int n_electrons, int n_alpha, int n_spatial,
                              encoding_kind enc) {
  const int n_beta = n_electrons - n_alpha;
  if (n_alpha > n_spatial || n_beta > n_spatial || n_alpha < 0 || n_beta < 0)
    throw std::invalid_argument("electron sector does not fit the orbital count");
  std::vector<int> occ(static_cast<std::size_t>(2 * n_spatial), 0);
  for (int i = 0; i < n_alpha; ++i) occ[static_cast<std::size_t>(i)] = 1;
  for (int i = 0; i < n_beta; ++i) occ[static_cast<std::size_t>(n_spatial + i)] = 1;
  if (enc == encoding_kind::jordan_wigner) return occ;
  std::vector<int> par(occ.size());
  int run = 0;
  for (std::size_t k = 0; k < occ.size(); ++k) {
    run = (run + occ[k]) % 2;
    par[k] = run;
  }
  if (enc == encoding_kind::parity) return par;
  std::vector<int> red;
  for (std::size_t k = 0; k < par.size(); ++k) {
    if (static_cast<int>(k) == n_spatial - 1 || k + 1 == par.size()) continue;
    red.push_back(par[k]);
  }
  return red;
}

std::uint64_t bitstring_to_index(const std::vector<int>& bits) {
  std::uint64_t idx = 0;
  for (std::size_t q = 0; q < bits.size(); ++q)
    if (bits[q]) idx |= 1ull << q;
  return idx;
}

}  // namespace tcq
