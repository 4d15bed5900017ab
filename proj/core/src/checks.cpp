#include "griddisp/checks.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "griddisp/alg3.hpp"
#include "griddisp/constants.hpp"
#include "griddisp/protocol_common.hpp"
#include "json.hpp"

namespace griddisp {

namespace {

bool is_line_phase(std::string_view tag) {
  static const std::set<std::string_view> kLine = {
      "a1.line", "a1.mid",   "a1.center", "a1.nw_n", "a1.nw_w", "a1.dispatch", "a1.settle",
      "a2.line", "a2.cline", "a2.sline",  "a3.line", "a3.sline"};
  return kLine.count(tag) > 0;
}

}  // namespace

std::vector<RobotHistory> replay_trace(const Grid& grid, const Placement& placement,
                                       const RoundTrace& trace) {
  std::vector<RobotHistory> robots(placement.size());
  for (size_t i = 0; i < placement.size(); ++i) {
    robots[i].start = robots[i].at = placement[i];
  }
  std::vector<std::string> cur_phase(placement.size());
  auto in_line_phase = [&](size_t i) { return is_line_phase(cur_phase[i]); };

  for (const auto& e : trace.events()) {
    if (e.id < 1 || size_t(e.id) > robots.size()) {
      throw ConfigError("replay: robot id out of range in trace");
    }
    RobotHistory& r = robots[size_t(e.id - 1)];
    switch (e.ev) {
      case Ev::Phase: {
        cur_phase[size_t(e.id - 1)] = std::string(e.tag);
        r.phases.emplace_back(e.round, std::string(e.tag));
        // Every phase change ends the current segment; entering a line
        // phase starts a new one at the current node.
        r.line_points.emplace_back(e.round, NodeId(-1));
        if (in_line_phase(size_t(e.id - 1))) r.line_points.emplace_back(e.round, r.at);
        break;
      }
      case Ev::Merged:
        r.line_points.emplace_back(e.round, NodeId(-1));
        r.line_points.emplace_back(e.round, r.at);
        break;
      case Ev::Moved: {
        const auto hop = grid.traverse(r.at, e.arg);
        r.at = hop.node;
        r.moves.emplace_back(e.round, e.arg, hop.node);
        if (in_line_phase(size_t(e.id - 1))) r.line_points.emplace_back(e.round, r.at);
        break;
      }
      case Ev::Settled:
        r.settled = true;
        r.settle_round = e.round;
        break;
      case Ev::Crashed:
        r.crashed = true;
        r.crash_round = e.round;
        break;
    }
  }
  return robots;
}

bool check_dispersion(const Grid& grid, const std::vector<RobotHistory>& robots,
                      DispersionMode mode) {
  std::vector<int> live_per_node(size_t(grid.node_count()), 0);
  for (const auto& r : robots) {
    if (r.crashed) {
      if (mode == DispersionMode::NonFaulty) return false;
      continue;
    }
    if (!r.settled) return false;
    if (++live_per_node[size_t(r.at)] > 1) return false;
  }
  return true;
}

std::vector<std::string> check_collinearity(const Grid& grid,
                                            const std::vector<RobotHistory>& robots) {
  std::vector<std::string> violations;
  for (size_t i = 0; i < robots.size(); ++i) {
    // Segments are runs of points between -1 sentinels.
    std::vector<NodeId> seg;
    auto flush = [&]() {
      if (seg.size() >= 3) {
        bool same_row = true, same_col = true;
        const auto [r0, c0] = grid.oracle_position(seg.front());
        for (NodeId v : seg) {
          const auto [r, c] = grid.oracle_position(v);
          same_row &= (r == r0);
          same_col &= (c == c0);
        }
        if (!same_row && !same_col) {
          violations.push_back("robot " + std::to_string(i + 1) + ": journey of " +
                               std::to_string(seg.size()) + " nodes leaves its line");
        }
      }
      seg.clear();
    };
    for (const auto& [round, node] : robots[i].line_points) {
      if (node < 0) {
        flush();
      } else {
        seg.push_back(node);
      }
    }
    flush();
  }
  return violations;
}

bool check_gathering(const Grid& grid, const std::vector<RobotHistory>& robots,
                     Round stage2_end) {
  // Position and phase of every live unsettled robot at the given round.
  std::map<NodeId, int> gathered_at;
  for (const auto& r : robots) {
    if (r.crashed && r.crash_round <= stage2_end) continue;
    if (r.settled && r.settle_round <= stage2_end) continue;
    NodeId pos = r.start;
    for (const auto& [round, port, dest] : r.moves) {
      if (round > stage2_end) break;
      pos = dest;
    }
    std::string phase;
    for (const auto& [round, tag] : r.phases) {
      if (round > stage2_end) break;
      phase = tag;
    }
    if (phase == "a3.gathered") ++gathered_at[pos];
  }
  int corners_with_groups = 0;
  for (const auto& [node, count] : gathered_at) {
    if (count >= 2 && grid.node_class(node) == NodeClass::Corner) ++corners_with_groups;
  }
  return corners_with_groups <= 1;
}

namespace {

// Rounds in which any robot carried the given phase prefix, from the
// recorded phase-change timelines.
Round last_round_in_phases(const std::vector<RobotHistory>& robots,
                           const std::set<std::string>& tags) {
  Round last = -1;
  for (const auto& r : robots) {
    for (size_t i = 0; i < r.phases.size(); ++i) {
      if (!tags.count(r.phases[i].second)) continue;
      // The phase runs until the next phase change (or the robot's end).
      const Round until =
          i + 1 < r.phases.size() ? r.phases[i + 1].first : r.phases[i].first;
      last = std::max(last, until);
    }
  }
  return last;
}

}  // namespace

CheckReport check_bounds(const GridSpec& spec, int k, const std::string& protocol,
                         const SimulationResult& result,
                         const std::vector<RobotHistory>& robots) {
  CheckReport rep;
  const int len = spec.cols();
  const int64_t n = spec.node_count();
  const int log_n = ceil_log2(n);
  auto add = [&](const std::string& lemma, double bound, double paper, double observed) {
    BoundRow row{lemma, bound, paper, observed, observed <= bound};
    rep.bounds_pass &= row.pass;
    rep.bounds.push_back(row);
  };

  if (protocol == "alg1") {
    const bool odd = (spec.cols() % 2 == 1) && (spec.rows() % 2 == 1);
    const double bound = odd ? 6.0 * len : 8.0 * len;
    add("alg1.total_rounds", bound, 6.0 * len, double(result.rounds_used));
    add("alg1.peak_memory_bits", sched::alg1_mem_ceiling(n), 0, result.peak_memory_bits_max);
  } else if (protocol == "alg2") {
    // Lemma 1: every boundary walk reaches its corner within 3L rounds of
    // starting.
    double worst_walk = 0;
    for (const auto& r : robots) {
      for (size_t i = 0; i < r.phases.size(); ++i) {
        if (r.phases[i].second != "a2.bwalk") continue;
        const Round until = i + 1 < r.phases.size() ? r.phases[i + 1].first : r.phases[i].first;
        worst_walk = std::max(worst_walk, double(until - r.phases[i].first));
      }
    }
    add("alg2.lemma1_boundary_walk", 3.0 * len, 3.0 * len, worst_walk);
    // Lemma 2: stage 2 (travel + relocation) finishes within 18L rounds of T1.
    const Round t1 = sched::alg2_t1(len);
    const Round s2_last = last_round_in_phases(robots, {"a2.travel", "a2.relocate"});
    add("alg2.lemma2_gather", 18.0 * len, 18.0 * len,
        s2_last < 0 ? 0.0 : double(s2_last - t1));
    add("alg2.total_rounds", double(sched::kAlg2RoundsPerSide) * len, 195.0 * len,
        double(result.rounds_used));
    add("alg2.peak_memory_bits", sched::alg2_mem_ceiling(n), 0, result.peak_memory_bits_max);
  } else if (protocol == "alg3") {
    const Round t1 = sched::alg3_t1(len, log_n);
    const Round trip_w = sched::alg3_trip_window(len);
    // Stage 2 span.
    const Round s2_last = last_round_in_phases(robots, {"a3.seek", "a3.relocate"});
    add("alg3.lemma6_gather", double(trip_w) * log_n + 6.0 * len, 12.0 * len * log_n + 6.0 * len,
        s2_last < 0 ? 0.0 : double(s2_last - t1));
    // Seeker trips actually used.
    std::set<long> trips;
    for (const auto& r : robots) {
      for (const auto& [round, tag] : r.phases) {
        if (tag == "a3.seek" && round >= t1) trips.insert(long((round - t1) / trip_w));
      }
    }
    add("alg3.stage2_trips", double(ceil_log2(std::max(2, k))) + 1, double(log_n),
        double(trips.size()));
    // Dispatch iterations actually used.
    const Round t2 = sched::alg3_t2(len, log_n);
    const Round iter_w = sched::alg3_iter_window(len, log_n);
    std::set<long> iters;
    for (const auto& r : robots) {
      for (const auto& [round, tag] : r.phases) {
        if (tag == "a3.dwalk" && round >= t2) iters.insert(long((round - t2) / iter_w));
      }
    }
    add("alg3.stage3_iterations", 2.0 * log_n, 2.0 * log_n, double(iters.size()));
    add("alg3.total_rounds", double(sched::kAlg3RoundsPerSideLog) * len * log_n,
        236.0 * len * log_n, double(result.rounds_used));
    add("alg3.peak_memory_bits", sched::alg3_mem_ceiling(len, n), 2.0 * len * log_n,
        result.peak_memory_bits_max);
  } else {
    throw ConfigError("check_bounds: unknown protocol '" + protocol + "'");
  }
  return rep;
}

CheckReport check_run(const Grid& grid, const Placement& placement, const GridSpec& spec, int k,
                      const std::string& protocol, const SimulationResult& result,
                      const RoundTrace& trace) {
  const auto robots = replay_trace(grid, placement, trace);
  CheckReport rep = check_bounds(spec, k, protocol, result, robots);
  rep.dispersed = check_dispersion(
      grid, robots, protocol == "alg2" ? DispersionMode::NonFaulty : DispersionMode::Faulty);
  rep.collinearity_violations = check_collinearity(grid, robots);
  rep.collinear = rep.collinearity_violations.empty();
  for (auto& row : rep.bounds) {
    if (row.lemma.find("memory") != std::string::npos) rep.memory_pass &= row.pass;
  }
  if (protocol == "alg3") {
    rep.gathering_pass =
        check_gathering(grid, robots, sched::alg3_t2(spec.cols(), ceil_log2(spec.node_count())));
  }
  return rep;
}

std::string CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["pass"] = pass();
  j["dispersed"] = dispersed;
  j["bounds_pass"] = bounds_pass;
  j["collinear"] = collinear;
  j["memory_pass"] = memory_pass;
  j["gathering_pass"] = gathering_pass;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& b : bounds) {
    rows.push_back({{"lemma", b.lemma},
                    {"bound", b.bound},
                    {"paper", b.paper},
                    {"observed", b.observed},
                    {"pass", b.pass}});
  }
  j["bounds"] = std::move(rows);
  j["collinearity_violations"] = collinearity_violations;
  j["notes"] = notes;
  return j.dump(2);
}

}  // namespace griddisp
