#pragma once

#include <memory>
#include <optional>
#include <string>

#include "griddisp/adversary.hpp"
#include "griddisp/checks.hpp"
#include "griddisp/engine.hpp"
#include "griddisp/grid.hpp"

namespace griddisp {

// One simulation run as described by a JSON config file.
struct RunConfig {
  GridSpec grid;
  int k = 0;
  std::optional<uint64_t> placement_seed;
  std::optional<Placement> placement;
  std::string protocol;       // alg1 | alg2 | alg3
  std::string adversary_json; // normalized policy object
  Round round_budget = 0;     // 0: protocol default

  std::string result_path;
  std::string trace_path;
  std::string csv_path;

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
  std::string to_json() const;

  // Protocol/orientation/adversary compatibility; throws ConfigError.
  void validate() const;
};

struct RunOutcome {
  Placement placement;
  SimulationResult result;
  RoundTrace trace;
  CheckReport report;
  std::string adversary_name;
};

// Builds the grid, program and policy from the config and runs the full
// pipeline including the checkers.
RunOutcome run_configured(const RunConfig& cfg);

// The protocol's default round budget for a given grid.
Round default_budget(const std::string& protocol, const GridSpec& spec);

// Canonical CSV row (no trailing newline); header for sweep outputs.
std::string csv_header();
std::string csv_row(const RunConfig& cfg, const RunOutcome& out, const std::string& seed_label);

}  // namespace griddisp
