#pragma once

#include <cstdint>
#include <string>

#include "core/config.hpp"
#include "json.hpp"

namespace tcq {

std::uint64_t fnv1a(const std::string& bytes);

// Subcommand drivers. Each returns the result document and writes it, along
// with a manifest, beneath cfg.output_directory.
nlohmann::json run_map(const run_config& cfg);
nlohmann::json run_solve(const run_config& cfg);
nlohmann::json run_scan(const run_config& cfg);
nlohmann::json run_mp2no(const run_config& cfg);
nlohmann::json run_constants(const run_config& cfg);

}  // namespace tcq
