#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tcqsim.h"

namespace {

int status_to_exit(tcq_status st) {
  switch (st) {
    case TCQ_OK:
      return 0;
    case TCQ_ERR_NUMERICAL:
      return 2;
    default:
      return 1;
  }
}

struct common_options {
  std::string config;
  std::vector<std::string> overrides;
  std::string seed;
  std::string threads;
  std::string output_dir;

  std::string override_text() const {
    std::string text;
    for (const auto& ov : overrides) text += ov + "\n";
    if (!seed.empty()) text += "run.seed=" + seed + "\n";
    if (!threads.empty()) text += "run.threads=" + threads + "\n";
    if (!output_dir.empty()) text += "output.directory=\"" + output_dir + "\"\n";
    return text;
  }
};

void add_common(CLI::App* cmd, common_options& opt) {
  cmd->add_option("-c,--config", opt.config, "Config file (TOML subset)");
  cmd->add_option("-s,--set", opt.overrides,
                  "Override a config value as section.key=value");
  cmd->add_option("--seed", opt.seed, "Random seed override");
  cmd->add_option("--threads", opt.threads, "Worker thread count (0 = hardware)");
  cmd->add_option("--output-dir", opt.output_dir, "Directory for result files");
}

using driver_fn = tcq_status (*)(const char*, const char*, char**);

int run(driver_fn fn, const common_options& opt) {
  char* json = nullptr;
  const tcq_status st =
      fn(opt.config.empty() ? nullptr : opt.config.c_str(),
         opt.override_text().c_str(), &json);
  if (st == TCQ_OK) {
    std::printf("%s\n", json);
    tcq_string_free(json);
    return 0;
  }
  std::fprintf(stderr, "error: %s\n", tcq_last_error());
  tcq_string_free(json);
  return status_to_exit(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("tcq ") + tcq_version() +
               " - transcorrelated quantum simulation toolkit"};
  app.require_subcommand(1);

  common_options map_opt, solve_opt, scan_opt, mp2no_opt, const_opt;
  CLI::App* cmd_map = app.add_subcommand(
      "map", "Encode a Hamiltonian and report qubit resource counts");
  add_common(cmd_map, map_opt);
  CLI::App* cmd_solve = app.add_subcommand(
      "solve", "Ground-state solve via the dense oracle or imaginary time");
  add_common(cmd_solve, solve_opt);
  CLI::App* cmd_scan =
      app.add_subcommand("scan", "Potential-energy scan and spectroscopic fit");
  add_common(cmd_scan, scan_opt);
  CLI::App* cmd_mp2no = app.add_subcommand(
      "mp2no", "Truncate a Hamiltonian to MP2 natural orbitals");
  add_common(cmd_mp2no, mp2no_opt);
  CLI::App* cmd_constants =
      app.add_subcommand("constants", "Print the physical constants table");
  add_common(cmd_constants, const_opt);

  CLI11_PARSE(app, argc, argv);

  if (cmd_map->parsed()) return run(&tcq_run_map, map_opt);
  if (cmd_solve->parsed()) return run(&tcq_run_solve, solve_opt);
  if (cmd_scan->parsed()) return run(&tcq_run_scan, scan_opt);
  if (cmd_mp2no->parsed()) return run(&tcq_run_mp2no, mp2no_opt);
  if (cmd_constants->parsed()) return run(&tcq_run_constants, const_opt);
  return 1;
}
