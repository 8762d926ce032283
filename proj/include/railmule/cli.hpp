#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "railmule/reports.hpp"
#include "railmule/routing.hpp"
#include "railmule/scenario.hpp"

namespace railmule::cli {

// Values given on the command line; each one that is set replaces the
// file value.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<routing::RouterKind> router;
};

scenario::ScenarioConfig apply_overrides(scenario::ScenarioConfig config, const Overrides& flags);

// Loads the map (relative paths resolve against base_dir), builds and runs
// the scenario, and writes events.csv plus every report file into out_dir.
reports::RunReport run_to_dir(const scenario::ScenarioConfig& config,
                              const std::filesystem::path& base_dir,
                              const std::filesystem::path& out_dir, std::ostream& warnings);

// Reads avg_latency_s from each summary and writes scaled_latency.csv.
std::vector<double> scale_latency_files(const std::vector<std::string>& summaries,
                                        const std::filesystem::path& out_dir);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace railmule::cli
