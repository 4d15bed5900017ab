#pragma once

#include <optional>
#include <string>
#include <vector>

#include "griddisp/engine.hpp"
#include "griddisp/grid.hpp"
#include "griddisp/trace.hpp"

namespace griddisp {

// Ground-truth checkers. Everything here works off the event log and the
// hidden-coordinate oracle; nothing feeds back into the simulation.

// Positions, flags and phase timelines reconstructed by replaying a trace.
struct RobotHistory {
  NodeId start = 0;
  NodeId at = 0;
  bool settled = false;
  bool crashed = false;
  Round settle_round = -1;
  Round crash_round = -1;
  std::vector<std::pair<Round, std::string>> phases;          // phase changes
  std::vector<std::pair<Round, NodeId>> line_points;          // straight-line positions
  std::vector<std::tuple<Round, int, NodeId>> moves;          // round, port, destination
};

std::vector<RobotHistory> replay_trace(const Grid& grid, const Placement& placement,
                                       const RoundTrace& trace);

// Definition check: every live robot settled and halted, no node with two
// live robots. In non-faulty mode any crash is itself a violation.
enum class DispersionMode { NonFaulty, Faulty };
bool check_dispersion(const Grid& grid, const std::vector<RobotHistory>& robots,
                      DispersionMode mode);

struct BoundRow {
  std::string lemma;       // which bound
  double bound = 0;        // implementation constant (asserted)
  double paper = 0;        // paper constant (reported only)
  double observed = 0;
  bool pass = true;
};

struct CheckReport {
  bool dispersed = false;
  bool bounds_pass = true;
  bool collinear = true;
  bool memory_pass = true;
  bool gathering_pass = true;  // stage-2 agreement (crash-tolerant runs)
  std::vector<BoundRow> bounds;
  std::vector<std::string> collinearity_violations;
  std::vector<std::string> notes;

  bool pass() const {
    return dispersed && bounds_pass && collinear && memory_pass && gathering_pass;
  }
  std::string to_json() const;
};

// Per-protocol round/lemma bounds over a finished run.
CheckReport check_bounds(const GridSpec& spec, int k, const std::string& protocol,
                         const SimulationResult& result,
                         const std::vector<RobotHistory>& robots);

// Straight-line oracle: for every maximal journey segment (split at phase
// changes and merges), the hidden coordinates of the committed hop positions
// share a row or a column. Probe excursions live in distinct phases and are
// excluded by construction.
std::vector<std::string> check_collinearity(const Grid& grid,
                                            const std::vector<RobotHistory>& robots);

// Stage-2 agreement for the crash-tolerant protocol: at the end of stage 2
// there must not be two distinct corners each holding a committed gathered
// group of two or more robots.
bool check_gathering(const Grid& grid, const std::vector<RobotHistory>& robots,
                     Round stage2_end);

// Full pipeline used by the CLI and the acceptance suite.
CheckReport check_run(const Grid& grid, const Placement& placement, const GridSpec& spec, int k,
                      const std::string& protocol, const SimulationResult& result,
                      const RoundTrace& trace);

}  // namespace griddisp
