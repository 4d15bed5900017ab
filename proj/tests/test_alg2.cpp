#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <set>

#include "doctest.h"
#include "griddisp/alg2.hpp"
#include "griddisp/checks.hpp"
#include "griddisp/constants.hpp"

using namespace griddisp;

namespace {

struct RunResult {
  SimulationResult res;
  RoundTrace trace;
  std::vector<RobotHistory> robots;
};

RunResult run_alg2(const GridSpec& spec, const Placement& placement) {
  const Grid grid(spec);
  const Alg2 prog(ProgramConfig::from(spec, int(placement.size())));
  auto policy = make_none_policy();
  RunResult r;
  r.res = run_simulation(grid, placement, prog, *policy, prog.budget() + 8 * spec.cols(), r.trace);
  r.robots = replay_trace(grid, placement, r.trace);
  return r;
}

std::set<NodeId> occupied_nodes(const RunResult& r) {
  std::set<NodeId> occ;
  for (const auto& rb : r.robots) {
    if (!rb.crashed && rb.settled) occ.insert(rb.at);
  }
  return occ;
}

}  // namespace

TEST_CASE("singletons settle at round 0 wherever they stand") {
  const auto spec = GridSpec::square(4, Orientation::Unoriented, 7);
  SUBCASE("k = 1") {
    const auto r = run_alg2(spec, {NodeId{5}});
    CHECK(r.res.dispersed);
    CHECK(r.res.rounds_used == 0);
  }
  SUBCASE("spread robots are all alone and all settle immediately") {
    const auto r = run_alg2(spec, {0, 3, 5, 10, 15});
    CHECK(r.res.dispersed);
    CHECK(r.res.rounds_used == 0);
  }
}

TEST_CASE("sixteen robots on one internal node fill the side-4 grid") {
  const auto spec = GridSpec::square(4, Orientation::Unoriented, 7);
  Placement all(16, NodeId{5});
  const auto r = run_alg2(spec, all);
  CHECK(r.res.dispersed);
  CHECK(r.res.completed);
  CHECK(occupied_nodes(r).size() == 16);
  CHECK(r.res.rounds_used <= sched::alg2_t_end(4));
}

TEST_CASE("stage-1 singletons are never displaced") {
  const auto spec = GridSpec::square(5, Orientation::Unoriented, 3);
  Placement placement{NodeId{12}, 6, 6, 6, 6, 6, 6};
  const auto r = run_alg2(spec, placement);
  REQUIRE(r.res.dispersed);
  CHECK(r.robots[0].settle_round == 0);
  CHECK(r.robots[0].at == NodeId{12});
  CHECK(r.robots[0].moves.empty());
}

TEST_CASE("gathering ends at the corner of the minimum-id corner robot") {
  const auto spec = GridSpec::square(6, Orientation::Unoriented, 11);
  const Grid grid(spec);
  const NodeId corner_a = grid.node_at(0, 0), corner_b = grid.node_at(5, 5);
  Placement placement{corner_a, corner_a, corner_a, corner_b, corner_b, corner_b};
  const Alg2 prog(ProgramConfig::from(spec, 6));
  auto policy = make_none_policy();
  RoundTrace trace;
  const auto res = run_simulation(grid, placement, prog, *policy, prog.budget(), trace);
  REQUIRE(res.completed);
  const auto robots = replay_trace(grid, placement, trace);
  // Robot 1 (global minimum) sits at corner_a; at T2 every robot not yet
  // settled must be there with it.
  std::map<NodeId, int> at_t2;
  for (const auto& rb : robots) {
    NodeId pos = rb.start;
    for (const auto& [round, port, dest] : rb.moves) {
      if (round >= prog.t2()) break;
      pos = dest;
    }
    if (!(rb.settled && rb.settle_round < prog.t2())) ++at_t2[pos];
  }
  CHECK(at_t2.size() == 1);
  CHECK(at_t2.begin()->first == corner_a);
  CHECK(res.dispersed);
}

TEST_CASE("lone corner robot keeps its seat") {
  const auto spec = GridSpec::square(5, Orientation::Unoriented, 2);
  const Grid grid(spec);
  Placement placement{grid.node_at(0, 0), 12, 12, 12, 12, 12};
  const auto r = run_alg2(spec, placement);
  REQUIRE(r.res.dispersed);
  CHECK(r.robots[0].at == grid.node_at(0, 0));
  CHECK(r.robots[0].settled);
}

TEST_CASE("column demand is measured and filled exactly") {
  // Side 5: two singletons pre-occupy column 1 at rows 1 and 2; a pile of
  // 17 robots gathers. Column 1's demand is exactly one seat at (3,1); the
  // robot sent there has to hop over the settled landmarks.
  const auto spec = GridSpec::square(5, Orientation::Unoriented, 4);
  const Grid grid(spec);
  Placement placement;
  placement.push_back(grid.node_at(1, 1));
  placement.push_back(grid.node_at(2, 1));
  for (int i = 0; i < 17; ++i) placement.push_back(grid.node_at(2, 2));
  const auto r = run_alg2(spec, placement);
  REQUIRE(r.res.dispersed);
  CHECK(occupied_nodes(r).size() == 19);
  bool filled = false;
  for (const auto& rb : r.robots) {
    if (rb.at == grid.node_at(3, 1)) filled = true;
  }
  CHECK(filled);
}

TEST_CASE("boundary-only branch when the gathered group is small") {
  const auto spec = GridSpec::square(6, Orientation::Unoriented, 5);
  const Grid grid(spec);
  Placement placement(8, grid.node_at(2, 2));
  const auto r = run_alg2(spec, placement);
  REQUIRE(r.res.dispersed);
  for (const auto& rb : r.robots) {
    CHECK(grid.node_class(rb.at) != NodeClass::Internal);
  }
}

TEST_CASE("dispersion, bounds and memory over a seeded mini-sweep") {
  for (int side : {4, 5, 6, 8}) {
    const auto spec_base = GridSpec::square(side, Orientation::Unoriented, 0);
    const int64_t n = spec_base.node_count();
    for (uint64_t port_seed : {0ull, 7ull}) {
      for (uint64_t pl_seed : {1ull, 2ull, 3ull}) {
        for (int k : {1, int(n / 2), int(n)}) {
          auto spec = spec_base;
          spec.port_seed = port_seed;
          const Grid grid(spec);
          const auto placement = placement_from_seed(grid, k, pl_seed);
          const auto r = run_alg2(spec, placement);
          INFO("side=", side, " ps=", port_seed, " pl=", pl_seed, " k=", k);
          CHECK(r.res.dispersed);
          CHECK(r.res.peak_memory_bits_max <= sched::alg2_mem_ceiling(n));
          const auto rep = check_bounds(spec, k, "alg2", r.res, r.robots);
          for (const auto& row : rep.bounds) {
            if (row.lemma == "alg2.lemma1_boundary_walk" || row.lemma == "alg2.lemma2_gather") {
              INFO("lemma row ", row.lemma, " observed ", row.observed, " bound ", row.bound);
              CHECK(row.pass);
            }
          }
          CHECK(check_collinearity(grid, r.robots).empty());
        }
      }
    }
  }
}

TEST_CASE("identical inputs give identical digests") {
  const auto spec = GridSpec::square(5, Orientation::Unoriented, 9);
  const Grid grid(spec);
  const auto placement = placement_from_seed(grid, 12, 4);
  const auto a = run_alg2(spec, placement);
  const auto b = run_alg2(spec, placement);
  CHECK(a.res.trace_digest == b.res.trace_digest);
}

TEST_CASE("alg2 on rectangles with the length substituted for the side") {
  for (auto [len, wid] : {std::pair{6, 3}, std::pair{8, 4}, std::pair{10, 5}}) {
    const auto spec = GridSpec::rectangle(len, wid, Orientation::Unoriented, 3);
    const Grid grid(spec);
    const int n = len * wid;
    const auto placement = placement_from_seed(grid, n, 5);
    const auto r = run_alg2(spec, placement);
    INFO("rect ", len, "x", wid);
    CHECK(r.res.dispersed);
    CHECK(occupied_nodes(r).size() == size_t(n));
    CHECK(r.res.peak_memory_bits_max <= sched::alg2_mem_ceiling(n));
  }
}
