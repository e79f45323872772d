#include "core/fermion.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tcq {

namespace {

constexpr double completion_tol = 1e-10;

void assign_checked(cplx& slot, char& seen, cplx value, const char* what) {
  if (seen && std::abs(slot - value) > completion_tol)
    throw std::runtime_error(std::string("conflicting ") + what +
                             " entries during symmetry completion");
  slot = value;
  seen = 1;
}

void assign_checked(double& slot, char& seen, double value, const char* what) {
  if (seen && std::abs(slot - value) > completion_tol)
    throw std::runtime_error(std::string("conflicting ") + what +
                             " entries during symmetry completion");
  slot = value;
  seen = 1;
}

long parse_header_int(const std::string& header, const std::string& key, long fallback,
                      bool required) {
  auto pos = header.find(key + "=");
  if (pos == std::string::npos) {
    if (required) throw std::runtime_error("FCIDUMP header missing " + key);
    return fallback;
  }
  return std::strtol(header.c_str() + pos + key.size() + 1, nullptr, 10);
}

}  // namespace

void fermion_hamiltonian::resize_tensors() {
  const std::size_t n = static_cast<std::size_t>(n_spatial);
  h1.assign(n * n, cplx{});
  h2.assign(n * n * n * n, cplx{});
  if (h3) h3->assign(n * n * n * n * n * n, 0.0);
}

void fermion_hamiltonian::check_symmetry(double tol) const {
  const int n = n_spatial;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (hermitian && std::abs(h1_at(p, q) - std::conj(h1_at(q, p))) > tol)
        throw std::runtime_error("h1 violates hermiticity");
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (std::abs(h2_at(p, q, r, s) - h2_at(r, s, p, q)) > tol)
            throw std::runtime_error("h2 violates particle-exchange symmetry");
          if (hermitian &&
              std::abs(h2_at(p, q, r, s) - std::conj(h2_at(q, p, s, r))) > tol)
            throw std::runtime_error("h2 violates hermiticity");
        }
    }
}

fermion_hamiltonian parse_fcidump(const std::string& text, const std::string& origin) {
  const auto end_pos = text.find("&END");
  if (end_pos == std::string::npos)
    throw std::runtime_error("no &END terminator in " + origin);
  std::string header = text.substr(0, end_pos);
  for (auto& c : header) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));

  fermion_hamiltonian h;
  h.n_spatial = static_cast<int>(parse_header_int(header, "NORB", 0, true));
  h.n_electrons = static_cast<int>(parse_header_int(header, "NELEC", 0, true));
  const int ms2 = static_cast<int>(parse_header_int(header, "MS2", 0, false));
  h.hermitian = parse_header_int(header, "HERMITIAN", 1, false) != 0;
  const bool three_body = parse_header_int(header, "THREEBODY", 0, false) != 0;
  if (h.n_spatial <= 0 || h.n_spatial > 32)
    throw std::runtime_error("NORB out of range in " + origin);
  if ((h.n_electrons + ms2) % 2 != 0)
    throw std::runtime_error("NELEC/MS2 parity mismatch in " + origin);
  h.n_alpha = (h.n_electrons + ms2) / 2;
  if (three_body) h.h3.emplace();
  h.resize_tensors();

  const std::size_t n = static_cast<std::size_t>(h.n_spatial);
  std::vector<char> seen1(n * n, 0), seen2(n * n * n * n, 0);
  std::vector<char> seen3;
  if (three_body) seen3.assign(n * n * n * n * n * n, 0);

  auto check_index = [&](long i) {
    if (i < 0 || i > h.n_spatial)
      throw std::runtime_error("orbital index out of range in " + origin);
  };
  auto set_h2 = [&](int p, int q, int r, int s, double v) {
    const std::size_t idx = ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
    assign_checked(h.h2[idx], seen2[idx], cplx(v, 0.0), "two-body");
  };
  auto set_h3 = [&](int p, int q, int r, int s, int t, int u, double v) {
    const std::size_t idx =
        ((((static_cast<std::size_t>(p) * n + q) * n + r) * n + s) * n + t) * n + u;
    assign_checked((*h.h3)[idx], seen3[idx], v, "three-body");
  };

  std::istringstream body(text.substr(end_pos + 4));
  std::string line;
  bool in_tcdump = false;
  while (std::getline(body, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (line.find("&TCDUMP") != std::string::npos) {
      if (!three_body)
        throw std::runtime_error("&TCDUMP section but THREEBODY=0 in " + origin);
      in_tcdump = true;
      continue;
    }
    std::istringstream ls(line);
    double v = 0;
    if (!(ls >> v)) throw std::runtime_error("bad value line in " + origin + ": " + line);
    if (in_tcdump) {
      long i[6];
      for (auto& ix : i)
        if (!(ls >> ix)) throw std::runtime_error("bad 6-index line in " + origin);
      for (auto ix : i) check_index(ix);
      const int p = static_cast<int>(i[0]) - 1, q = static_cast<int>(i[1]) - 1,
                r = static_cast<int>(i[2]) - 1, s = static_cast<int>(i[3]) - 1,
                t = static_cast<int>(i[4]) - 1, u = static_cast<int>(i[5]) - 1;
      const std::array<std::array<int, 2>, 3> pr = {{{p, q}, {r, s}, {t, u}}};
      const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                               {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
      for (const auto& pm : perms)
        set_h3(pr[pm[0]][0], pr[pm[0]][1], pr[pm[1]][0], pr[pm[1]][1], pr[pm[2]][0],
               pr[pm[2]][1], v);
      continue;
    }
    long p, q, r, s;
    if (!(ls >> p >> q >> r >> s))
      throw std::runtime_error("bad 4-index line in " + origin + ": " + line);
    check_index(p);
    check_index(q);
    check_index(r);
    check_index(s);
    if (p == 0 && q == 0 && r == 0 && s == 0) {
      h.e0 = cplx(v, 0.0);
    } else if (r == 0 && s == 0) {
      const int pi = static_cast<int>(p) - 1, qi = static_cast<int>(q) - 1;
      if (p == 0 || q == 0) throw std::runtime_error("bad 1-body indices in " + origin);
      const auto idx = [&](int a, int b) { return static_cast<std::size_t>(a) * n + b; };
      assign_checked(h.h1[idx(pi, qi)], seen1[idx(pi, qi)], cplx(v, 0.0), "one-body");
      if (h.hermitian && pi != qi)
        assign_checked(h.h1[idx(qi, pi)], seen1[idx(qi, pi)], cplx(v, 0.0), "one-body");
    } else {
      if (p == 0 || q == 0 || r == 0 || s == 0)
        throw std::runtime_error("bad 2-body indices in " + origin);
      const int pi = static_cast<int>(p) - 1, qi = static_cast<int>(q) - 1,
                ri = static_cast<int>(r) - 1, si = static_cast<int>(s) - 1;
      set_h2(pi, qi, ri, si, v);
      set_h2(ri, si, pi, qi, v);
      if (h.hermitian) {
        set_h2(qi, pi, si, ri, v);
        set_h2(si, ri, qi, pi, v);
        set_h2(qi, pi, ri, si, v);
        set_h2(pi, qi, si, ri, v);
        set_h2(ri, si, qi, pi, v);
        set_h2(si, ri, pi, qi, v);
      }
    }
  }
  h.check_symmetry(completion_tol);
  return h;
}

fermion_hamiltonian load_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open integral file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fcidump(buf.str(), path);
}

void write_fcidump(const fermion_hamiltonian& h, const std::string& path, double tol) {
  const int n = h.n_spatial;
  auto real_of = [&](cplx v) {
    if (std::abs(v.imag()) > 1e-12)
      throw std::runtime_error("FCIDUMP output requires real-valued tensors");
    return v.real();
  };
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write integral file " + path);
  out << "&FCI NORB=" << n << ",NELEC=" << h.n_electrons
      << ",MS2=" << (2 * h.n_alpha - h.n_electrons) << ",\n ORBSYM=";
  for (int i = 0; i < n; ++i) out << "1,";
  out << "\n ISYM=1,\n HERMITIAN=" << (h.hermitian ? 1 : 0)
      << ",\n THREEBODY=" << (h.h3 ? 1 : 0) << ",\n&END\n";
  char buf[96];
  auto emit = [&](double v, int p, int q, int r, int s) {
    std::snprintf(buf, sizeof buf, " % .16e %3d %3d %3d %3d\n", v, p, q, r, s);
    out << buf;
  };
  // Canonical representative per symmetry orbit: highest (p,q,r,s) tuple in
  // lexicographic order among the equivalent index permutations.
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = real_of(h.h2_at(p, q, r, s));
          if (std::abs(v) <= tol) continue;
          std::array<int, 4> me = {p, q, r, s};
          bool canonical = me >= std::array<int, 4>{r, s, p, q};
          if (h.hermitian) {
            canonical = canonical && me >= std::array<int, 4>{q, p, s, r} &&
                        me >= std::array<int, 4>{s, r, q, p} &&
                        me >= std::array<int, 4>{q, p, r, s} &&
                        me >= std::array<int, 4>{p, q, s, r} &&
                        me >= std::array<int, 4>{r, s, q, p} &&
                        me >= std::array<int, 4>{s, r, p, q};
          }
          if (canonical) emit(v, p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double v = real_of(h.h1_at(p, q));
      if (std::abs(v) <= tol) continue;
      if (h.hermitian && p < q) continue;
      emit(v, p + 1, q + 1, 0, 0);
    }
  emit(real_of(h.e0), 0, 0, 0, 0);
  if (h.h3) {
    out << "&TCDUMP\n";
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
              for (int u = 0; u < n; ++u) {
                const double v = h.h3_at(p, q, r, s, t, u);
                if (std::abs(v) <= tol) continue;
                const std::array<std::array<int, 2>, 3> pr = {{{p, q}, {r, s}, {t, u}}};
                if (pr[0] >= pr[1] && pr[1] >= pr[2]) {
                  std::snprintf(buf, sizeof buf, " % .16e %3d %3d %3d %3d %3d %3d\n", v,
                                p + 1, q + 1, r + 1, s + 1, t + 1, u + 1);
                  out << buf;
                }
              }
  }
}

}  // namespace tcq
