#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <set>

#include "doctest.h"
#include "griddisp/alg3.hpp"
#include "griddisp/checks.hpp"
#include "griddisp/constants.hpp"

using namespace griddisp;

namespace {

struct RunResult {
  SimulationResult res;
  RoundTrace trace;
  std::vector<RobotHistory> robots;
};

RunResult run_alg3(const GridSpec& spec, const Placement& placement,
                   std::unique_ptr<CrashPolicy> policy = nullptr) {
  const Grid grid(spec);
  const Alg3 prog(ProgramConfig::from(spec, int(placement.size())));
  if (!policy) policy = make_none_policy();
  RunResult r;
  r.res = run_simulation(grid, placement, prog, *policy, prog.budget(), r.trace);
  r.robots = replay_trace(grid, placement, r.trace);
  return r;
}

int live_settled_distinct(const RunResult& r) {
  std::set<NodeId> occ;
  for (const auto& rb : r.robots) {
    if (rb.crashed) continue;
    if (!rb.settled) return -1;
    if (!occ.insert(rb.at).second) return -2;  // collision
  }
  return int(occ.size());
}

}  // namespace

TEST_CASE("fault-free degeneration matches a valid dispersion") {
  const auto spec = GridSpec::square(5, Orientation::Unoriented, 7);
  Placement all(25, NodeId{12});
  const auto r = run_alg3(spec, all);
  CHECK(r.res.dispersed);
  CHECK(live_settled_distinct(r) == 25);
  CHECK(r.res.rounds_used <=
        Round(sched::kAlg3RoundsPerSideLog) * 5 * ceil_log2(25));
}

TEST_CASE("k = 1 settles at round 0") {
  const auto spec = GridSpec::square(6, Orientation::Unoriented, 3);
  const auto r = run_alg3(spec, {NodeId{14}});
  CHECK(r.res.dispersed);
  CHECK(r.res.rounds_used == 0);
}

TEST_CASE("random crashes leave survivors settled on distinct nodes") {
  const auto spec = GridSpec::square(8, Orientation::Unoriented, 1);
  const Grid grid(spec);
  const auto placement = placement_from_seed(grid, 64, 9);
  auto policy = make_random_policy(0.02, 5, 64);
  const auto r = run_alg3(spec, placement, std::move(policy));
  CHECK(r.res.crash_count > 0);
  CHECK(r.res.dispersed);
  CHECK(live_settled_distinct(r) == 64 - r.res.crash_count);
}

TEST_CASE("target_scouts worst case still disperses") {
  const auto spec = GridSpec::square(6, Orientation::Unoriented, 2);
  const Grid grid(spec);
  Placement placement(16, grid.node_at(3, 3));
  auto policy = make_target_scouts_policy(4, 1.0, 12);
  const auto r = run_alg3(spec, placement, std::move(policy));
  CHECK(r.res.dispersed);
  CHECK(r.res.crash_count == 12);
  CHECK(live_settled_distinct(r) == 4);
}

TEST_CASE("halving chain: a group of 16 shrinks by at least half per failed window") {
  // Kill every scout half right after departure: with a cap of 15 the group
  // halves until a singleton settles at the start node.
  const auto spec = GridSpec::square(8, Orientation::Unoriented, 5);
  const Grid grid(spec);
  const NodeId start = grid.node_at(4, 4);
  Placement placement(16, start);
  auto policy = make_target_scouts_policy(11, 1.0, 15);
  const auto r = run_alg3(spec, placement, std::move(policy));
  CHECK(r.res.dispersed);
  CHECK(r.res.crash_count == 15);
  // The lone survivor is the smallest id; it settles where the chain left
  // it, one port-1 hop from the start.
  CHECK_FALSE(r.robots[0].crashed);
  CHECK(r.robots[0].settled);
  CHECK(r.robots[0].at == grid.traverse(start, 1).node);
  // Each failed attempt at least halves the group: from 16 robots at most
  // ceil(log2 16) + 1 = 5 windows pass before the singleton settles.
  CHECK(r.robots[0].settle_round <= 1 + 5 * sched::kHopWindow + 1);
}

TEST_CASE("corner agreement: all seekers crashing forces a retry") {
  const auto spec = GridSpec::square(5, Orientation::Unoriented, 6);
  const Grid grid(spec);
  const Alg3 prog(ProgramConfig::from(spec, 6));
  // Six robots parked on one corner; their stage-1 is trivial. Crash every
  // seeker on the first two trips right after departure.
  Placement placement(6, grid.node_at(0, 0));
  const Round t1 = prog.t1();
  auto policy = make_fixed_policy({{t1 + 1, 4},
                                   {t1 + 1, 5},
                                   {t1 + 1, 6},
                                   {t1 + 12 * 5 + 1, 3}});
  RunResult r;
  r.res = run_simulation(grid, placement, prog, *policy, prog.budget(), r.trace);
  r.robots = replay_trace(grid, placement, r.trace);
  CHECK(r.res.dispersed);
  // Trips 1 and 2 lost robots; a later trip must have committed, so seek
  // activity appears in at least two distinct trip windows.
  std::set<long> trips;
  for (const auto& rb : r.robots) {
    for (const auto& [round, tag] : rb.phases) {
      if (tag == "a3.seek") trips.insert(long((round - t1) / (12 * 5)));
    }
  }
  CHECK(trips.size() >= 2);
}

TEST_CASE("no-crash corner agreement commits on the first trip") {
  const auto spec = GridSpec::square(5, Orientation::Unoriented, 8);
  const Grid grid(spec);
  Placement placement;
  for (int i = 0; i < 4; ++i) placement.push_back(grid.node_at(0, 0));
  for (int i = 0; i < 4; ++i) placement.push_back(grid.node_at(4, 4));
  const Alg3 prog(ProgramConfig::from(spec, 8));
  auto policy = make_none_policy();
  RunResult r;
  r.res = run_simulation(grid, placement, prog, *policy, prog.budget(), r.trace);
  r.robots = replay_trace(grid, placement, r.trace);
  REQUIRE(r.res.dispersed);
  std::set<long> trips;
  for (const auto& rb : r.robots) {
    for (const auto& [round, tag] : rb.phases) {
      if (tag == "a3.seek") trips.insert(long((round - prog.t1()) / (12 * 5)));
    }
  }
  CHECK(trips.size() == 1);
  // Gathering correctness: stage 2 ends with one committed corner group.
  CHECK(check_gathering(grid, r.robots, prog.t2()));
}

TEST_CASE("stage-2 trips stay within the ceil(log2 k)+1 budget under attack") {
  const auto spec = GridSpec::square(6, Orientation::Unoriented, 4);
  const Grid grid(spec);
  const auto placement = placement_from_seed(grid, 36, 2);
  auto policy = make_target_scouts_policy(7, 1.0, 30);
  const auto r = run_alg3(spec, placement, std::move(policy));
  CHECK(r.res.dispersed);
  const Alg3 prog(ProgramConfig::from(spec, 36));
  std::set<long> trips;
  for (const auto& rb : r.robots) {
    for (const auto& [round, tag] : rb.phases) {
      if (tag == "a3.seek" && round >= prog.t1()) {
        trips.insert(long((round - prog.t1()) / (12 * 6)));
      }
    }
  }
  CHECK(long(trips.size()) <= ceil_log2(36) + 1);
}

TEST_CASE("memory ceiling holds and the table dominates") {
  const auto spec = GridSpec::square(8, Orientation::Unoriented, 3);
  const Grid grid(spec);
  Placement placement(64, grid.node_at(4, 4));
  const auto r = run_alg3(spec, placement);
  REQUIRE(r.res.dispersed);
  const int ceiling = sched::alg3_mem_ceiling(8, 64);
  CHECK(r.res.peak_memory_bits_max <= ceiling);
  // The replicated column table alone accounts for 2*len*ceil(log2 len).
  CHECK(r.res.peak_memory_bits_max >= 2 * 8 * ceil_log2(8));
}

TEST_CASE("fixed worst-case halving chains on rectangles") {
  const auto spec = GridSpec::rectangle(8, 4, Orientation::Unoriented, 2);
  const Grid grid(spec);
  const auto placement = placement_from_seed(grid, 32, 6);
  auto policy = make_random_policy(0.01, 3, 32);
  const auto r = run_alg3(spec, placement, std::move(policy));
  CHECK(r.res.dispersed);
  CHECK(live_settled_distinct(r) == 32 - r.res.crash_count);
}

TEST_CASE("determinism under adversaries") {
  const auto spec = GridSpec::square(6, Orientation::Unoriented, 9);
  const Grid grid(spec);
  const auto placement = placement_from_seed(grid, 20, 3);
  auto p1 = make_random_policy(0.05, 13, 20);
  auto p2 = p1->clone();
  const Alg3 prog(ProgramConfig::from(spec, 20));
  RoundTrace t1, t2;
  const auto a = run_simulation(grid, placement, prog, *p1, prog.budget(), t1);
  const auto b = run_simulation(grid, placement, prog, *p2, prog.budget(), t2);
  CHECK(a.trace_digest == b.trace_digest);
}
