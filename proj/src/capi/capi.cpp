#include "tcqsim.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/encode.hpp"
#include "core/fermion.hpp"
#include "core/pauli.hpp"
#include "core/runner.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Parse and I/O problems surface as dedicated statuses so callers can map
// them to exit codes without string matching.
tcq_status classify(const std::exception& ex) {
  const std::string what = ex.what();
  if (dynamic_cast<const std::invalid_argument*>(&ex) != nullptr)
    return TCQ_ERR_INVALID_ARGUMENT;
  if (what.find("cannot open") != std::string::npos ||
      what.find("cannot write") != std::string::npos)
    return TCQ_ERR_IO;
  if (what.find("parse") != std::string::npos ||
      what.find("malformed") != std::string::npos ||
      what.find("expected") != std::string::npos)
    return TCQ_ERR_PARSE;
  if (dynamic_cast<const std::bad_alloc*>(&ex) != nullptr) return TCQ_ERR_UNSUPPORTED;
  return TCQ_ERR_NUMERICAL;
}

template <typename F>
tcq_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return TCQ_OK;
  } catch (const std::exception& ex) {
    set_error(ex.what());
    return classify(ex);
  } catch (...) {
    set_error("unknown error");
    return TCQ_ERR_NUMERICAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split_overrides(const char* overrides) {
  std::vector<std::string> out;
  if (overrides == nullptr) return out;
  std::istringstream is(overrides);
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

using driver_fn = nlohmann::json (*)(const tcq::run_config&);

tcq_status run_driver(driver_fn fn, const char* config_path, const char* overrides,
                      char** json_out) {
  if (json_out == nullptr) {
    set_error("json_out must not be null");
    return TCQ_ERR_INVALID_ARGUMENT;
  }
  *json_out = nullptr;
  return guarded([&] {
    const std::string path = config_path == nullptr ? "" : config_path;
    const tcq::run_config cfg =
        tcq::load_run_config(path, split_overrides(overrides));
    const nlohmann::json doc = fn(cfg);
    *json_out = dup_string(doc.dump(2));
  });
}

}  // namespace

extern "C" {

struct tcq_hamiltonian {
  tcq::fermion_hamiltonian h;
};

struct tcq_pauli_sum {
  tcq::pauli_sum p;
};

const char* tcq_version(void) { return "0.1.0"; }

const char* tcq_last_error(void) { return g_last_error.c_str(); }

tcq_status tcq_hamiltonian_load(const char* path, tcq_hamiltonian** out) {
  if (path == nullptr || out == nullptr) {
    set_error("null argument");
    return TCQ_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] { *out = new tcq_hamiltonian{tcq::load_fcidump(path)}; });
}

void tcq_hamiltonian_free(tcq_hamiltonian* h) { delete h; }

tcq_status tcq_hamiltonian_info(const tcq_hamiltonian* h, int* n_spatial,
                                int* n_electrons, int* n_alpha, int* hermitian,
                                int* three_body) {
  if (h == nullptr) {
    set_error("null handle");
    return TCQ_ERR_INVALID_ARGUMENT;
  }
  if (n_spatial) *n_spatial = h->h.n_spatial;
  if (n_electrons) *n_electrons = h->h.n_electrons;
  if (n_alpha) *n_alpha = h->h.n_alpha;
  if (hermitian) *hermitian = h->h.hermitian ? 1 : 0;
  if (three_body) *three_body = h->h.h3.has_value() ? 1 : 0;
  g_last_error.clear();
  return TCQ_OK;
}

tcq_status tcq_hamiltonian_encode(const tcq_hamiltonian* h, const char* encoding,
                                  double epsilon, tcq_pauli_sum** out) {
  if (h == nullptr || encoding == nullptr || out == nullptr) {
    set_error("null argument");
    return TCQ_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    const tcq::encoded_hamiltonian enc =
        tcq::encode(h->h, tcq::encoding_from_string(encoding), epsilon);
    *out = new tcq_pauli_sum{enc.pauli};
  });
}

void tcq_pauli_sum_free(tcq_pauli_sum* p) { delete p; }

tcq_status tcq_pauli_sum_n_terms(const tcq_pauli_sum* p, size_t* out) {
  if (p == nullptr || out == nullptr) {
    set_error("null argument");
    return TCQ_ERR_INVALID_ARGUMENT;
  }
  *out = p->p.n_terms();
  g_last_error.clear();
  return TCQ_OK;
}

tcq_status tcq_pauli_sum_n_qubits(const tcq_pauli_sum* p, int* out) {
  if (p == nullptr || out == nullptr) {
    set_error("null argument");
    return TCQ_ERR_INVALID_ARGUMENT;
  }
  *out = p->p.n_qubits();
  g_last_error.clear();
  return TCQ_OK;
}

tcq_status tcq_pauli_sum_one_norm(const tcq_pauli_sum* p, double* out) {
  if (p == nullptr || out == nullptr) {
    set_error("null argument");
    return TCQ_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = p->p.one_norm(); });
}

tcq_status tcq_pauli_sum_serialize(const tcq_pauli_sum* p, char** out) {
  if (p == nullptr || out == nullptr) {
    set_error("null argument");
    return TCQ_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] { *out = dup_string(p->p.serialize()); });
}

tcq_status tcq_pauli_sum_parse(const char* text, tcq_pauli_sum** out) {
  if (text == nullptr || out == nullptr) {
    set_error("null argument");
    return TCQ_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] { *out = new tcq_pauli_sum{tcq::pauli_sum::parse(text)}; });
}

void tcq_string_free(char* s) { delete[] s; }

tcq_status tcq_run_map(const char* config_path, const char* overrides,
                       char** json_out) {
  return run_driver(&tcq::run_map, config_path, overrides, json_out);
}

tcq_status tcq_run_solve(const char* config_path, const char* overrides,
                         char** json_out) {
  return run_driver(&tcq::run_solve, config_path, overrides, json_out);
}

tcq_status tcq_run_scan(const char* config_path, const char* overrides,
                        char** json_out) {
  return run_driver(&tcq::run_scan, config_path, overrides, json_out);
}

tcq_status tcq_run_mp2no(const char* config_path, const char* overrides,
                         char** json_out) {
  return run_driver(&tcq::run_mp2no, config_path, overrides, json_out);
}

tcq_status tcq_run_constants(const char* config_path, const char* overrides,
                             char** json_out) {
  return run_driver(&tcq::run_constants, config_path, overrides, json_out);
}

}  // extern "C"
