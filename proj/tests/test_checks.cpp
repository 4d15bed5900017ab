#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>

#include "doctest.h"
#include "griddisp/checks.hpp"
#include "griddisp/engine.hpp"

using namespace griddisp;

namespace {

// Program with scripted moves and a fixed fake phase per robot; used to
// feed the checkers controlled traces.
struct Rig {
  struct Mem {
    RobotId id = 0;
  };
  std::map<RobotId, std::string_view> tags;
  std::map<std::pair<RobotId, Round>, int> acts;  // port, -1 settle

  Mem init(RobotId id) const { return {id}; }
  StepOut step(Mem& self, const StepCtx<Mem>& ctx) const {
    const auto it = acts.find({self.id, ctx.round});
    if (it == acts.end()) return {};
    if (it->second == -1) return {Decision::settle()};
    return {Decision::move(it->second)};
  }
  int memory_bits(const Mem&) const { return 1; }
  std::string_view phase(const Mem& m) const {
    const auto it = tags.find(m.id);
    return it == tags.end() ? "idle" : it->second;
  }
  long retries(const Mem&) const { return 0; }
  std::string_view name() const { return "rig"; }
};

}  // namespace

TEST_CASE("check_dispersion truth table") {
  const Grid g(GridSpec::square(4, Orientation::Oriented));
  Rig rig;
  auto policy = make_none_policy();

  SUBCASE("two live robots on one node fail") {
    rig.acts[{1, 0}] = -1;
    rig.acts[{2, 0}] = -1;
    RoundTrace trace;
    run_simulation(g, {5, 5}, rig, *policy, 5, trace);
    const auto robots = replay_trace(g, {5, 5}, trace);
    CHECK_FALSE(check_dispersion(g, robots, DispersionMode::NonFaulty));
  }
  SUBCASE("unsettled live robot fails") {
    rig.acts[{1, 0}] = -1;
    RoundTrace trace;
    run_simulation(g, {5, 6}, rig, *policy, 5, trace);
    const auto robots = replay_trace(g, {5, 6}, trace);
    CHECK_FALSE(check_dispersion(g, robots, DispersionMode::Faulty));
  }
  SUBCASE("crashed robots are ignored in faulty mode, rejected otherwise") {
    rig.acts[{1, 2}] = -1;
    auto fixed = make_fixed_policy({{1, 2}});
    RoundTrace trace;
    run_simulation(g, {5, 5}, rig, *fixed, 5, trace);
    const auto robots = replay_trace(g, {5, 5}, trace);
    CHECK(check_dispersion(g, robots, DispersionMode::Faulty));
    CHECK_FALSE(check_dispersion(g, robots, DispersionMode::NonFaulty));
  }
  SUBCASE("full occupancy passes; empty nodes are fine too") {
    for (RobotId i = 1; i <= 8; ++i) rig.acts[{i, 0}] = -1;
    Placement placement;
    for (NodeId v = 0; v < 8; ++v) placement.push_back(v * 2);
    RoundTrace trace;
    run_simulation(g, placement, rig, *policy, 5, trace);
    const auto robots = replay_trace(g, placement, trace);
    CHECK(check_dispersion(g, robots, DispersionMode::NonFaulty));
  }
}

TEST_CASE("collinearity checker flags a kinked journey (negative control)") {
  const Grid g(GridSpec::square(5, Orientation::Oriented));
  Rig rig;
  rig.tags[1] = "a2.line";  // pretends to be straight-line movement
  const NodeId start = g.node_at(2, 1);
  const auto east = [&](NodeId v) { return g.profile(v).port_of_dir[size_t(Dir::E)]; };
  const auto south = [&](NodeId v) { return g.profile(v).port_of_dir[size_t(Dir::S)]; };
  rig.acts[{1, 0}] = east(start);
  rig.acts[{1, 1}] = east(g.node_at(2, 2));
  rig.acts[{1, 2}] = south(g.node_at(2, 3));  // the kink
  rig.acts[{1, 3}] = -1;
  auto policy = make_none_policy();
  RoundTrace trace;
  run_simulation(g, {start}, rig, *policy, 10, trace);
  const auto robots = replay_trace(g, {start}, trace);
  const auto violations = check_collinearity(g, robots);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("robot 1") != std::string::npos);

  // The same walk under a non-line tag is ignored.
  Rig honest = rig;
  honest.tags[1] = "a2.bwalk";
  RoundTrace t2;
  run_simulation(g, {start}, honest, *policy, 10, t2);
  CHECK(check_collinearity(g, replay_trace(g, {start}, t2)).empty());
}

TEST_CASE("gathering checker detects a split commit") {
  const Grid g(GridSpec::square(5, Orientation::Unoriented, 1));
  Rig rig;
  for (RobotId i = 1; i <= 4; ++i) rig.tags[i] = "a3.gathered";
  const Placement placement{g.node_at(0, 0), g.node_at(0, 0), g.node_at(4, 4), g.node_at(4, 4)};
  auto policy = make_none_policy();
  RoundTrace trace;
  run_simulation(g, placement, rig, *policy, 3, trace);
  const auto robots = replay_trace(g, placement, trace);
  CHECK_FALSE(check_gathering(g, robots, 2));

  // One gathered corner plus a singleton elsewhere is fine.
  Rig ok = rig;
  const Placement placement2{g.node_at(0, 0), g.node_at(0, 0), g.node_at(0, 0), g.node_at(4, 4)};
  RoundTrace t2;
  run_simulation(g, placement2, ok, *policy, 3, t2);
  CHECK(check_gathering(g, replay_trace(g, placement2, t2), 2));
}

TEST_CASE("check_bounds rejects unknown protocols and reports rows") {
  const auto spec = GridSpec::square(4, Orientation::Oriented);
  SimulationResult res;
  res.rounds_used = 10;
  std::vector<RobotHistory> robots;
  CHECK_THROWS_AS(check_bounds(spec, 4, "alg9", res, robots), ConfigError);

  const auto rep = check_bounds(spec, 4, "alg1", res, robots);
  REQUIRE(rep.bounds.size() == 2);
  CHECK(rep.bounds[0].lemma == "alg1.total_rounds");
  CHECK(rep.bounds[0].pass);
  CHECK(rep.bounds[0].paper == 24.0);  // 6L reference next to the 8L budget
}

TEST_CASE("reports serialize and re-running checkers is idempotent") {
  const Grid g(GridSpec::square(4, Orientation::Oriented));
  Rig rig;
  rig.acts[{1, 0}] = -1;
  auto policy = make_none_policy();
  RoundTrace trace;
  const auto res = run_simulation(g, {5}, rig, *policy, 5, trace);
  const auto spec = GridSpec::square(4, Orientation::Oriented);
  const auto a = check_run(g, {5}, spec, 1, "alg1", res, trace);
  const auto b = check_run(g, {5}, spec, 1, "alg1", res, trace);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.dispersed);
  CHECK(a.to_json().find("\"pass\"") != std::string::npos);
}
