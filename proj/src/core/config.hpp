#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tcq {

struct toml_value {
  enum class kind { string, number, boolean, array } k = kind::string;
  std::string str;
  double num = 0.0;
  bool b = false;
  std::vector<toml_value> items;
};

using toml_table = std::map<std::string, std::map<std::string, toml_value>>;

// Parses the supported TOML subset: [section] headers, key = value pairs,
// strings, numbers, booleans, flat arrays, and # comments.
toml_table parse_toml(const std::string& text, const std::string& origin);

// Applies "section.key=value" override lines on top of a parsed table.
void apply_overrides(toml_table& table, const std::vector<std::string>& overrides);

struct run_config {
  // [run]
  std::uint64_t seed = 1234;
  int threads = 0;  // 0 = hardware concurrency

  // [problem]
  std::string integrals;
  std::string encoding = "jordan-wigner";
  double truncation = 1e-8;
  std::vector<double> truncation_report;

  // [ansatz]
  std::string ansatz = "uccsd";  // uccsd | hea
  int layers = 1;

  // [evolution]
  std::string solver = "exact";  // exact | varqite
  std::string derivatives = "parameter-shift";
  double dtau = 0.05;
  int max_steps = 400;
  double residual_tol = 1e-6;
  int persistence = 5;
  double svd_cutoff = 1e-8;
  double fd_delta = 1e-3;
  std::string trajectory;  // optional CSV name under the output directory
  bool resume = false;

  // [noise]
  bool noise_enabled = false;
  double p1 = 1e-3;
  double p2 = 1e-2;
  double readout_p01 = 0.0;
  double readout_p10 = 0.0;

  // [sampling]
  std::uint64_t shots = 0;  // 0 = exact expectation values

  // [mitigation]
  bool zne = false;
  std::vector<int> zne_scales{1, 3, 5};
  int zne_order = 1;
  bool rem = false;
  bool readout_correction = false;

  // [scan]
  std::string geometries;  // CSV with R_angstrom and file columns
  std::string scan_directory;
  int window = 7;
  std::string curvature_at = "fit-min";
  std::optional<double> reference_energy;
  double mass1 = 0.0;
  double mass2 = 0.0;

  // [mp2no]
  int keep = 0;
  std::string mp2no_output;

  // [output]
  std::string output_directory = ".";

  std::string config_text;  // raw file contents, hashed into the manifest
};

// Parses, validates against the known schema (unknown keys rejected), and
// applies overrides. path may be empty when only overrides drive the run.
run_config load_run_config(const std::string& path,
                           const std::vector<std::string>& overrides);

run_config config_from_table(const toml_table& table, const std::string& raw_text);

}  // namespace tcq
