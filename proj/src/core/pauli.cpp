#include "core/pauli.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tcq {

namespace {

constexpr cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int merge_tags(int a, int b) {
  if (a == b) return a;
  if (a == body_class::untagged || b == body_class::untagged)
    return body_class::untagged;
  return body_class::mixed;
}

}  // namespace

pauli_term multiply(const pauli_term& a, const pauli_term& b) {
  // P(x1,z1) P(x2,z2) = i^(q1+q2-q12) (-1)^|z1&x2| P(x1^x2, z1^z2)
  // from commuting Z^z1 past X^x2.
  const int q1 = std::popcount(a.key.x & a.key.z);
  const int q2 = std::popcount(b.key.x & b.key.z);
  axes_key out{a.key.x ^ b.key.x, a.key.z ^ b.key.z};
  const int q12 = std::popcount(out.x & out.z);
  const int k = ((q1 + q2 - q12 + 2 * std::popcount(a.key.z & b.key.x)) % 4 + 4) % 4;
  return {out, a.coeff * b.coeff * i_pow[k], merge_tags(a.tag, b.tag)};
}

std::string axes_to_string(axes_key key, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 0; q < n_qubits; ++q) {
    const bool bx = (key.x >> q) & 1, bz = (key.z >> q) & 1;
    if (bx && bz)
      s[static_cast<std::size_t>(q)] = 'Y';
    else if (bx)
      s[static_cast<std::size_t>(q)] = 'X';
    else if (bz)
      s[static_cast<std::size_t>(q)] = 'Z';
  }
  return s;
}

axes_key axes_from_string(const std::string& s) {
  if (s.size() > 64) throw std::invalid_argument("axes string longer than 64 qubits");
  axes_key key;
  for (std::size_t q = 0; q < s.size(); ++q) {
    switch (s[q]) {
      case 'I':
        break;
      case 'X':
        key.x |= 1ull << q;
        break;
      case 'Y':
        key.x |= 1ull << q;
        key.z |= 1ull << q;
        break;
      case 'Z':
        key.z |= 1ull << q;
        break;
      default:
        throw std::invalid_argument("invalid axis character in " + s);
    }
  }
  return key;
}

pauli_sum::pauli_sum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 64)
    throw std::invalid_argument("qubit count out of range [0, 64]");
}

void pauli_sum::add_term(axes_key key, cplx coeff, int tag) {
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (std::abs(coeff) >= zero_floor) terms_.emplace(key, term_data{coeff, tag});
    return;
  }
  it->second.coeff += coeff;
  it->second.tag = merge_tags(it->second.tag, tag);
  if (std::abs(it->second.coeff) < zero_floor) terms_.erase(it);
}

pauli_sum& pauli_sum::operator+=(const pauli_sum& other) {
  if (n_qubits_ != other.n_qubits_)
    throw std::invalid_argument("qubit count mismatch in pauli_sum addition");
  for (const auto& [key, data] : other.terms_) add_term(key, data.coeff, data.tag);
  return *this;
}

pauli_sum& pauli_sum::operator*=(cplx scalar) {
  if (std::abs(scalar) < zero_floor) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, data] : terms_) data.coeff *= scalar;
  return *this;
}

pauli_sum multiply(const pauli_sum& a, const pauli_sum& b) {
  if (a.n_qubits_ != b.n_qubits_)
    throw std::invalid_argument("qubit count mismatch in pauli_sum product");
  pauli_sum out(a.n_qubits_);
  for (const auto& [ka, da] : a.terms_)
    for (const auto& [kb, db] : b.terms_) {
      pauli_term t = multiply(pauli_term{ka, da.coeff, da.tag},
                              pauli_term{kb, db.coeff, db.tag});
      out.add_term(t.key, t.coeff, t.tag);
    }
  return out;
}

double pauli_sum::truncate(double epsilon) {
  if (epsilon < 0) throw std::invalid_argument("negative truncation threshold");
  double removed = 0.0;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second.coeff) < epsilon) {
      removed += std::abs(it->second.coeff);
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

double pauli_sum::one_norm() const {
  double s = 0.0;
  for (const auto& [key, data] : terms_) s += std::abs(data.coeff);
  return s;
}

bool pauli_sum::has_tags() const {
  for (const auto& [key, data] : terms_)
    if (data.tag != body_class::untagged) return true;
  return false;
}

double pauli_sum::one_norm(int tag_filter) const {
  if (!terms_.empty() && !has_tags())
    throw std::invalid_argument("body-class filter requested on an untagged sum");
  double s = 0.0;
  for (const auto& [key, data] : terms_)
    if (data.tag == tag_filter) s += std::abs(data.coeff);
  return s;
}

bool pauli_sum::is_hermitian(double tol) const {
  for (const auto& [key, data] : terms_)
    if (std::abs(data.coeff.imag()) > tol) return false;
  return true;
}

std::pair<pauli_sum, pauli_sum> pauli_sum::hermitian_split() const {
  pauli_sum plus(n_qubits_), minus(n_qubits_);
  for (const auto& [key, data] : terms_) {
    // Strings are self-adjoint, so H^dag conjugates coefficients termwise.
    plus.add_term(key, 2.0 * data.coeff.real(), data.tag);
    minus.add_term(key, cplx(0.0, 2.0 * data.coeff.imag()), data.tag);
  }
  return {plus, minus};
}

Eigen::MatrixXcd pauli_sum::to_dense(int max_qubits) const {
  if (n_qubits_ > max_qubits)
    throw std::invalid_argument("dense conversion beyond the oracle qubit limit");
  const std::uint64_t dim = 1ull << n_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<long>(dim), static_cast<long>(dim));
  for (const auto& [key, data] : terms_)
    for (std::uint64_t b = 0; b < dim; ++b)
      m(static_cast<long>(b ^ key.x), static_cast<long>(b)) += data.coeff * basis_phase(key, b);
  return m;
}

std::string pauli_sum::serialize() const {
  std::ostringstream os;
  os << "qubits=" << n_qubits_ << " hermitian=" << (is_hermitian() ? "true" : "false")
     << "\n";
  char buf[64];
  for (const auto& [key, data] : terms_) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g ", data.coeff.real(), data.coeff.imag());
    os << buf << axes_to_string(key, n_qubits_) << "\n";
  }
  return os.str();
}

pauli_sum pauli_sum::parse(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("empty pauli_sum text");
  int n = -1;
  char flag[16] = {0};
  if (std::sscanf(header.c_str(), "qubits=%d hermitian=%15s", &n, flag) != 2 || n < 0)
    throw std::invalid_argument("bad pauli_sum header: " + header);
  pauli_sum out(n);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double re = 0, im = 0;
    std::string axes;
    if (!(ls >> re >> im >> axes))
      throw std::invalid_argument("bad pauli_sum term line: " + line);
    if (static_cast<int>(axes.size()) != n)
      throw std::invalid_argument("axes length mismatch in line: " + line);
    out.add_term(axes_from_string(axes), cplx(re, im));
  }
  return out;
}

}  // namespace tcq
