#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tcq {

using cplx = std::complex<double>;

// Coefficients with modulus below this are treated as exact zeros and
// removed during arithmetic. Distinct from the user-facing 1e-8 truncation.
inline constexpr double zero_floor = 1e-15;

// Body-class provenance tags, assigned at encoding time so the 1-norm
// breakdown can be reported per originating tensor. Merging terms of
// different classes yields mixed; arithmetic on untagged input stays
// untagged.
namespace body_class {
inline constexpr int untagged = -1;
inline constexpr int scalar = 0;
inline constexpr int one_body = 1;
inline constexpr int two_body = 2;
inline constexpr int three_body = 3;
inline constexpr int mixed = 4;
}  // namespace body_class

// A Pauli string over up to 64 qubits, stored as X/Z bitmasks with the
// phase convention P(x,z) = i^popcount(x&z) * X^x * Z^z (Z applied first).
// Under this convention every string is Hermitian and bit q set in x&~z
// means X on qubit q, z&~x means Z, x&z means Y.
struct axes_key {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  auto operator<=>(const axes_key&) const = default;
};

struct pauli_term {
  axes_key key;
  cplx coeff;
  int tag = body_class::untagged;
};

// Multiplies two Pauli strings; the group phase (+/-1, +/-i) is folded into
// the returned coefficient.
pauli_term multiply(const pauli_term& a, const pauli_term& b);

std::string axes_to_string(axes_key key, int n_qubits);
axes_key axes_from_string(const std::string& s);

class pauli_sum {
 public:
  pauli_sum() = default;
  explicit pauli_sum(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t n_terms() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  struct term_data {
    cplx coeff;
    int tag = body_class::untagged;
  };
  const std::map<axes_key, term_data>& terms() const { return terms_; }

  // Merges one term in, dropping the entry if the result is an exact zero.
  void add_term(axes_key key, cplx coeff, int tag = body_class::untagged);

  pauli_sum& operator+=(const pauli_sum& other);
  pauli_sum& operator*=(cplx scalar);
  friend pauli_sum operator+(pauli_sum a, const pauli_sum& b) {
    a += b;
    return a;
  }
  friend pauli_sum operator*(pauli_sum a, cplx s) {
    a *= s;
    return a;
  }

  friend pauli_sum multiply(const pauli_sum& a, const pauli_sum& b);

  // Removes terms with |coeff| < epsilon; returns the removed 1-norm mass.
  double truncate(double epsilon);

  double one_norm() const;
  // 1-norm over one body class; throws if no term carries a tag.
  double one_norm(int tag_filter) const;
  bool has_tags() const;

  // True when every coefficient is real to within 1e-12 (strings are
  // self-adjoint, so hermiticity is equivalent to real coefficients).
  bool is_hermitian(double tol = 1e-12) const;

  // H+ = H + H^dag and H- = H - H^dag; (h_plus + h_minus)/2 == *this.
  std::pair<pauli_sum, pauli_sum> hermitian_split() const;

  Eigen::MatrixXcd to_dense(int max_qubits = 14) const;

  // Text form: header "qubits=<n> hermitian=<bool>", then one term per
  // line as "<re> <im> <axes>" with string position i = qubit i.
  std::string serialize() const;
  static pauli_sum parse(const std::string& text);

 private:
  int n_qubits_ = 0;
  std::map<axes_key, term_data> terms_;
};

// Applies P(x,z) to a computational basis state:
// P |b> = i^popcount(x&z) * (-1)^popcount(z&b) |b^x>.
inline cplx basis_phase(axes_key key, std::uint64_t b) {
  static constexpr cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  int k = std::popcount(key.x & key.z) & 3;
  if (std::popcount(key.z & b) & 1) k = (k + 2) & 3;
  return i_pow[k];
}

}  // namespace tcq
