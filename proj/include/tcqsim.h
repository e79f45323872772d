/* C interface for the transcorrelated quantum simulation toolkit.
 *
 * All functions return tcq_status; every handle and string produced by the
 * library is released with the matching free function. Error text for the
 * most recent failure on the calling thread is available from
 * tcq_last_error().
 */
#ifndef TCQSIM_H
#define TCQSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tcq_status {
  TCQ_OK = 0,
  TCQ_ERR_INVALID_ARGUMENT = 1,
  TCQ_ERR_IO = 2,
  TCQ_ERR_PARSE = 3,
  TCQ_ERR_NUMERICAL = 4,
  TCQ_ERR_UNSUPPORTED = 5
} tcq_status;

/* Library version as "major.minor.patch". */
const char* tcq_version(void);

/* Message for the last error raised on this thread; empty string if none. */
const char* tcq_last_error(void);

/* ------------------------------------------------------------------ */
/* Opaque handles                                                      */
/* ------------------------------------------------------------------ */

typedef struct tcq_hamiltonian tcq_hamiltonian; /* second-quantized operator */
typedef struct tcq_pauli_sum tcq_pauli_sum;     /* qubit operator            */

/* Loads an extended FCIDUMP file (HERMITIAN / THREEBODY keys supported). */
tcq_status tcq_hamiltonian_load(const char* path, tcq_hamiltonian** out);
void tcq_hamiltonian_free(tcq_hamiltonian* h);

tcq_status tcq_hamiltonian_info(const tcq_hamiltonian* h, int* n_spatial,
                                int* n_electrons, int* n_alpha, int* hermitian,
                                int* three_body);

/* Encodes into qubits; encoding is "jordan-wigner", "parity", or
 * "parity-reduced"; epsilon drops Pauli terms below the threshold. */
tcq_status tcq_hamiltonian_encode(const tcq_hamiltonian* h, const char* encoding,
                                  double epsilon, tcq_pauli_sum** out);

void tcq_pauli_sum_free(tcq_pauli_sum* p);
tcq_status tcq_pauli_sum_n_terms(const tcq_pauli_sum* p, size_t* out);
tcq_status tcq_pauli_sum_n_qubits(const tcq_pauli_sum* p, int* out);
tcq_status tcq_pauli_sum_one_norm(const tcq_pauli_sum* p, double* out);

/* Serializes to the library's text format; parse reverses it. Strings from
 * the library are released with tcq_string_free. */
tcq_status tcq_pauli_sum_serialize(const tcq_pauli_sum* p, char** out);
tcq_status tcq_pauli_sum_parse(const char* text, tcq_pauli_sum** out);
void tcq_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Batch drivers                                                       */
/* ------------------------------------------------------------------ */

/* Each driver reads a config file (path may be NULL or empty when the
 * overrides carry everything), applies newline-separated
 * "section.key=value" overrides, writes result and manifest files under the
 * configured output directory, and hands back the result document as JSON
 * text in *json_out. */
tcq_status tcq_run_map(const char* config_path, const char* overrides,
                       char** json_out);
tcq_status tcq_run_solve(const char* config_path, const char* overrides,
                         char** json_out);
tcq_status tcq_run_scan(const char* config_path, const char* overrides,
                        char** json_out);
tcq_status tcq_run_mp2no(const char* config_path, const char* overrides,
                         char** json_out);
tcq_status tcq_run_constants(const char* config_path, const char* overrides,
                             char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TCQSIM_H */
