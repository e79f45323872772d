#include "core/runner.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "core/circuit.hpp"
#include "core/constants.hpp"
#include "core/encode.hpp"
#include "core/fermion.hpp"
#include "core/mitigation.hpp"
#include "core/mp2no.hpp"
#include "core/noise.hpp"
#include "core/oracle.hpp"
#include "core/sampling.hpp"
#include "core/spectro.hpp"
#include "core/statevector.hpp"
#include "core/varqite.hpp"

namespace tcq {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

json make_manifest(const run_config& cfg, const std::vector<std::string>& inputs) {
  json fixtures = json::object();
  for (const auto& p : inputs) fixtures[p] = hex64(fnv1a(read_file(p)));
  return json{{"config_hash", hex64(fnv1a(cfg.config_text))},
              {"fixture_hashes", fixtures},
              {"seed", cfg.seed},
              {"constants_version", constants::version},
              {"tool_version", "0.1.0"}};
}

fs::path prepare_output_dir(const run_config& cfg) {
  fs::path dir(cfg.output_directory.empty() ? "." : cfg.output_directory);
  fs::create_directories(dir);
  return dir;
}

void emit(const run_config& cfg, const char* stem, const json& doc,
          const std::vector<std::string>& inputs) {
  const fs::path dir = prepare_output_dir(cfg);
  write_text(dir / (std::string(stem) + ".json"), doc.dump(2) + "\n");
  write_text(dir / "manifest.json", make_manifest(cfg, inputs).dump(2) + "\n");
}

noise_model noise_from_config(const run_config& cfg, int n_qubits) {
  noise_model nm;
  if (!cfg.noise_enabled) {
    nm.p1 = 0.0;
    nm.p2 = 0.0;
    return nm;
  }
  nm.p1 = cfg.p1;
  nm.p2 = cfg.p2;
  if (cfg.readout_p01 > 0.0 || cfg.readout_p10 > 0.0)
    nm.readout.assign(static_cast<std::size_t>(n_qubits),
                      {cfg.readout_p01, cfg.readout_p10});
  return nm;
}

circuit build_ansatz(const run_config& cfg, const fermion_hamiltonian& h,
                     const encoded_hamiltonian& enc) {
  if (cfg.ansatz == "uccsd")
    return build_uccsd(h.n_spatial, h.n_electrons, h.n_alpha, enc.encoding);
  circuit c = build_hea(enc.pauli.n_qubits(), cfg.layers);
  return c;
}

json one_norm_breakdown(const encoded_hamiltonian& enc) {
  json out = json::object();
  out["total"] = enc.pauli.one_norm();
  if (enc.pauli.has_tags()) {
    out["scalar"] = enc.pauli.one_norm(body_class::scalar);
    out["one_body"] = enc.pauli.one_norm(body_class::one_body);
    out["two_body"] = enc.pauli.one_norm(body_class::two_body);
    out["three_body"] = enc.pauli.one_norm(body_class::three_body);
  }
  return out;
}

struct solved_point {
  cplx energy{0.0, 0.0};
  double c_hf = 0.0;
  bool converged = true;
  int steps = 0;
  double residual = 0.0;
  std::vector<double> theta;  // varqite only
};

solved_point solve_encoded(const run_config& cfg, const fermion_hamiltonian& h,
                           const encoded_hamiltonian& enc,
                           const std::string& trajectory_path) {
  solved_point out;
  const auto hf = hf_bitstring(h.n_electrons, h.n_alpha, h.n_spatial, enc.encoding);
  const std::uint64_t hf_index = bitstring_to_index(hf);
  if (cfg.solver == "exact") {
    const eig_result eig = dense_eig(enc.pauli);
    out.energy = eig.values(0);
    out.c_hf = basis_weight(eig.right.col(0), hf_index);
    return out;
  }
  const circuit ansatz = build_ansatz(cfg, h, enc);
  evolution_config ev;
  ev.dtau = cfg.dtau;
  ev.max_steps = cfg.max_steps;
  ev.residual_tol = cfg.residual_tol;
  ev.persistence = cfg.persistence;
  ev.svd_cutoff = cfg.svd_cutoff;
  ev.mode = derivative_mode_from_string(cfg.derivatives);
  ev.fd_delta = cfg.fd_delta;
  ev.trajectory_path = trajectory_path;
  ev.resume = cfg.resume;
  const std::vector<double> theta0(static_cast<std::size_t>(ansatz.n_parameters), 0.0);
  const evolution_result res = evolve(ansatz, enc.pauli, theta0, ev);
  out.energy = res.energy;
  out.converged = res.converged;
  out.steps = res.steps;
  out.residual = res.residual;
  out.theta = res.theta;
  const state_vector psi = simulate(ansatz, res.theta);
  out.c_hf = basis_weight(psi, hf_index);
  return out;
}

}  // namespace

json run_map(const run_config& cfg) {
  if (cfg.integrals.empty())
    throw std::invalid_argument("problem.integrals is required for map");
  const fermion_hamiltonian h = load_fcidump(cfg.integrals);
  const encoding_kind enc_kind = encoding_from_string(cfg.encoding);
  const encoded_hamiltonian enc = encode(h, enc_kind, cfg.truncation);

  json thresholds = json::array();
  std::vector<double> report = cfg.truncation_report;
  if (report.empty()) report.push_back(cfg.truncation);
  for (double eps : report) {
    const encoded_hamiltonian e = encode(h, enc_kind, eps);
    thresholds.push_back({{"threshold", eps},
                          {"terms", e.pauli.n_terms()},
                          {"removed_one_norm", e.removed_mass}});
  }

  json doc{{"integrals", cfg.integrals},
           {"encoding", cfg.encoding},
           {"n_spatial", h.n_spatial},
           {"n_electrons", h.n_electrons},
           {"n_qubits", enc.pauli.n_qubits()},
           {"hermitian", h.hermitian},
           {"three_body", h.h3.has_value()},
           {"pauli_terms", enc.pauli.n_terms()},
           {"one_norm", one_norm_breakdown(enc)},
           {"term_counts", thresholds}};

  const circuit ansatz = build_ansatz(cfg, h, enc);
  const circuit_stats_t st = circuit_stats(ansatz);
  doc["ansatz"] = {{"kind", cfg.ansatz},
                   {"parameters", st.parameters},
                   {"gates", st.gates},
                   {"cnots", st.cnots},
                   {"depth", st.depth}};
  emit(cfg, "map", doc, {cfg.integrals});
  return doc;
}

json run_solve(const run_config& cfg) {
  if (cfg.integrals.empty())
    throw std::invalid_argument("problem.integrals is required for solve");
  const fermion_hamiltonian h = load_fcidump(cfg.integrals);
  const encoding_kind enc_kind = encoding_from_string(cfg.encoding);
  const encoded_hamiltonian enc = encode(h, enc_kind, cfg.truncation);

  std::string trajectory_path;
  if (!cfg.trajectory.empty())
    trajectory_path = (prepare_output_dir(cfg) / cfg.trajectory).string();
  const solved_point pt = solve_encoded(cfg, h, enc, trajectory_path);

  json doc{{"integrals", cfg.integrals},
           {"encoding", cfg.encoding},
           {"solver", cfg.solver},
           {"n_qubits", enc.pauli.n_qubits()},
           {"energy_re", pt.energy.real()},
           {"energy_im", pt.energy.imag()},
           {"c_hf", pt.c_hf}};
  if (cfg.solver == "varqite") {
    doc["converged"] = pt.converged;
    doc["steps"] = pt.steps;
    doc["residual"] = pt.residual;
    if (!cfg.trajectory.empty()) doc["trajectory"] = trajectory_path;
  }

  if (cfg.solver == "varqite" && (cfg.noise_enabled || cfg.shots > 0 || cfg.zne ||
                                  cfg.rem)) {
    const circuit ansatz = build_ansatz(cfg, h, enc);
    const std::vector<double>& theta = pt.theta;
    const noise_model nm = noise_from_config(cfg, ansatz.n_qubits);
    if (!enc.pauli.is_hermitian())
      throw std::invalid_argument(
          "noise and sampling paths need a Hermitian operator");
    if (cfg.noise_enabled) {
      doc["noisy_energy"] = noisy_expectation(ansatz, theta, enc.pauli, nm).real();
      json mits = json::array();
      if (cfg.zne) {
        zne_options opt;
        opt.scales = cfg.zne_scales;
        opt.fit_order = cfg.zne_order;
        const mitigation_record rec =
            zero_noise_extrapolation(ansatz, theta, enc.pauli, nm, opt);
        mits.push_back({{"method", rec.method},
                        {"raw", rec.raw},
                        {"mitigated", rec.mitigated},
                        {"scales", rec.scales},
                        {"scale_values", rec.scale_values},
                        {"improved", std::abs(rec.mitigated - pt.energy.real()) <
                                         std::abs(rec.raw - pt.energy.real())}});
      }
      if (cfg.rem) {
        const auto hf =
            hf_bitstring(h.n_electrons, h.n_alpha, h.n_spatial, enc.encoding);
        const circuit ref = build_state_prep(hf);
        const mitigation_record rec =
            reference_error_mitigation(ansatz, theta, enc.pauli, nm, ref);
        mits.push_back({{"method", rec.method},
                        {"raw", rec.raw},
                        {"mitigated", rec.mitigated},
                        {"reference_exact", rec.reference_exact},
                        {"reference_noisy", rec.reference_noisy},
                        {"improved", std::abs(rec.mitigated - pt.energy.real()) <
                                         std::abs(rec.raw - pt.energy.real())}});
      }
      if (!mits.empty()) doc["mitigation"] = mits;
    }
    if (cfg.shots > 0) {
      const sampled_value sv =
          sample_expectation(ansatz, theta, enc.pauli, cfg.shots, nm, cfg.seed);
      doc["sampled"] = {{"mean", sv.mean},
                        {"std_error", sv.std_error},
                        {"shots_per_group", sv.shots_per_group},
                        {"groups", sv.groups}};
    }
  }
  emit(cfg, "solve", doc, {cfg.integrals});
  return doc;
}

namespace {

struct geometry_entry {
  double r = 0.0;
  std::string file;
};

std::vector<geometry_entry> read_geometries(const std::string& csv_path,
                                            const std::string& base_dir) {
  const std::string text = read_file(csv_path);
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty scan list " + csv_path);
  std::vector<std::string> headers;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) headers.push_back(cell);
  }
  int r_col = -1, f_col = -1;
  for (std::size_t i = 0; i < headers.size(); ++i) {
    if (headers[i] == "R_angstrom" || headers[i] == "r") r_col = static_cast<int>(i);
    if (headers[i] == "file") f_col = static_cast<int>(i);
  }
  if (r_col < 0 || f_col < 0)
    throw std::runtime_error("scan list needs R_angstrom and file columns: " +
                             csv_path);
  const fs::path base =
      base_dir.empty() ? fs::path(csv_path).parent_path() : fs::path(base_dir);
  std::vector<geometry_entry> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) <= std::max(r_col, f_col))
      throw std::runtime_error("short row in scan list: " + line);
    geometry_entry e;
    e.r = std::stod(cells[static_cast<std::size_t>(r_col)]);
    e.file = (base / cells[static_cast<std::size_t>(f_col)]).string();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

json run_scan(const run_config& cfg) {
  if (cfg.geometries.empty())
    throw std::invalid_argument("scan.geometries is required for scan");
  const auto entries = read_geometries(cfg.geometries, cfg.scan_directory);
  if (entries.empty()) throw std::invalid_argument("scan list holds no geometries");

  struct row {
    geometry_entry geo;
    solved_point pt;
    std::string error;
    bool done = false;
  };
  std::vector<row> rows(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) rows[i].geo = entries[i];

  const encoding_kind enc_kind = encoding_from_string(cfg.encoding);
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : hw;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(entries.size()));

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= rows.size()) return;
      try {
        const fermion_hamiltonian h = load_fcidump(rows[i].geo.file);
        const encoded_hamiltonian enc = encode(h, enc_kind, cfg.truncation);
        rows[i].pt = solve_encoded(cfg, h, enc, "");
        rows[i].done = true;
      } catch (const std::exception& ex) {
        rows[i].error = ex.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t + 1 < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const fs::path dir = prepare_output_dir(cfg);
  std::ostringstream csv;
  csv << "R_angstrom,file,energy_re,energy_im,c_hf\n";
  std::vector<pec_point> pec;
  std::vector<std::string> inputs{cfg.geometries};
  char buf[64];
  for (const auto& r : rows) {
    if (!r.done) continue;
    std::snprintf(buf, sizeof buf, "%.4f", r.geo.r);
    csv << buf << "," << fs::path(r.geo.file).filename().string();
    std::snprintf(buf, sizeof buf, "%.12f", r.pt.energy.real());
    csv << "," << buf;
    std::snprintf(buf, sizeof buf, "%.12g", r.pt.energy.imag());
    csv << "," << buf;
    std::snprintf(buf, sizeof buf, "%.8f", r.pt.c_hf);
    csv << "," << buf << "\n";
    pec.push_back({r.geo.r, r.pt.energy.real()});
    inputs.push_back(r.geo.file);
  }
  for (const auto& r : rows)
    if (!r.done) {
      write_text(dir / "pec_partial.csv", csv.str());
      throw std::runtime_error("geometry " + r.geo.file + " failed: " + r.error);
    }
  write_text(dir / "pec.csv", csv.str());

  spectroscopy_options opt;
  opt.window = cfg.window;
  opt.curvature_at = curvature_site_from_string(cfg.curvature_at);
  opt.reference_energy = cfg.reference_energy;
  opt.mass1_amu = cfg.mass1;
  opt.mass2_amu = cfg.mass2;
  const spectroscopy_result sp = analyze_curve(pec, opt);

  json doc{{"geometries", cfg.geometries},
           {"solver", cfg.solver},
           {"encoding", cfg.encoding},
           {"points", pec.size()},
           {"pec_csv", (dir / "pec.csv").string()},
           {"r_e_angstrom", sp.r_e},
           {"e_min_hartree", sp.e_min},
           {"k_hartree_ang2", sp.k},
           {"k_fit_min", sp.k_fit_min},
           {"k_grid_min", sp.k_grid_min},
           {"omega_cm1", sp.omega_cm1},
           {"omega_fit_min", sp.omega_fit_min},
           {"omega_grid_min", sp.omega_grid_min},
           {"d_e_ev", sp.d_e_ev},
           {"d0_ev", sp.d0_ev},
           {"zpe_ev", sp.zpe_ev},
           {"fit_residual", sp.fit_residual},
           {"window", cfg.window},
           {"curvature_at", cfg.curvature_at}};
  if (cfg.reference_energy) doc["reference_energy"] = *cfg.reference_energy;
  emit(cfg, "scan", doc, inputs);
  return doc;
}

json run_mp2no(const run_config& cfg) {
  if (cfg.integrals.empty())
    throw std::invalid_argument("problem.integrals is required for mp2no");
  if (cfg.keep <= 0) throw std::invalid_argument("mp2no.keep must be positive");
  const fermion_hamiltonian h = load_fcidump(cfg.integrals);
  const mp2no_result res = mp2_natural_orbitals(h, cfg.keep);

  const fs::path dir = prepare_output_dir(cfg);
  std::string out_name = cfg.mp2no_output;
  if (out_name.empty()) {
    const fs::path in(cfg.integrals);
    out_name = in.stem().string() + "_no" + std::to_string(cfg.keep) + ".fcidump";
  }
  const fs::path out_path = dir / out_name;
  write_fcidump(res.truncated, out_path.string());

  double trace = 0.0;
  for (int i = 0; i < res.density.rows(); ++i) trace += res.density(i, i);
  json doc{{"integrals", cfg.integrals},
           {"keep", cfg.keep},
           {"output", out_path.string()},
           {"occupations", res.occupations},
           {"density_trace", trace},
           {"mp2_correlation", res.mp2_correlation},
           {"hf_energy", res.hf_energy}};
  emit(cfg, "mp2no", doc, {cfg.integrals});
  return doc;
}

json run_constants(const run_config& cfg) {
  json doc{{"version", constants::version},
           {"hartree_to_ev", constants::hartree_to_ev},
           {"hartree_to_joule", constants::hartree_to_joule},
           {"angstrom_to_bohr", constants::angstrom_to_bohr},
           {"amu_to_kg", constants::amu_to_kg},
           {"c_cm_per_s", constants::speed_of_light_cm_s},
           {"invcm_to_ev", constants::invcm_to_ev},
           {"mass_h1_amu", constants::mass_h1},
           {"mass_li7_amu", constants::mass_li7}};
  emit(cfg, "constants", doc, {});
  return doc;
}

}  // namespace tcq
