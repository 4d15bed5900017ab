#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <sstream>

#include "doctest.h"
#include "griddisp/engine.hpp"

using namespace griddisp;

namespace {

// Scripted program: per (robot, round) either move through a port, settle
// (-1), or stay. Records the peers seen each round, and nothing else -- it
// has no other inputs to consult, which is the isolation contract.
struct Script {
  struct Mem {
    RobotId id = 0;
    std::vector<std::pair<Round, RobotId>> seen;
  };
  std::map<std::pair<RobotId, Round>, int> acts;

  Mem init(RobotId id) const { return {id, {}}; }
  StepOut step(Mem& self, const StepCtx<Mem>& ctx) const {
    for (const auto& p : ctx.colocated) {
      if (p.id != self.id) self.seen.emplace_back(ctx.round, p.id);
    }
    const auto it = acts.find({self.id, ctx.round});
    if (it == acts.end()) return {};
    if (it->second == -1) return {Decision::settle()};
    return {Decision::move(it->second)};
  }
  int memory_bits(const Mem&) const { return 4; }
  std::string_view phase(const Mem&) const { return "script"; }
  long retries(const Mem&) const { return 0; }
  std::string_view name() const { return "script"; }
};

Grid small_grid() { return Grid(GridSpec::square(4, Orientation::Oriented)); }

bool saw(const Script::Mem& m, Round r, RobotId who) {
  for (const auto& [round, id] : m.seen) {
    if (round == r && id == who) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("co-located robots see each other during communicate") {
  const Grid g = small_grid();
  Script prog;
  prog.acts[{1, 3}] = -1;
  prog.acts[{2, 3}] = -1;
  auto policy = make_none_policy();
  RoundTrace trace;
  std::vector<Script::Mem> mems;
  const Placement placement{5, 5};  // same node
  const auto res = run_simulation(g, placement, prog, *policy, 100, trace, &mems);
  CHECK(res.completed);
  CHECK(saw(mems[0], 0, 2));
  CHECK(saw(mems[1], 0, 1));
}

TEST_CASE("opposite traversals of one edge swap without meeting") {
  const Grid g = small_grid();
  const NodeId a = g.node_at(1, 1), b = g.node_at(1, 2);
  const int a_to_b = g.profile(a).port_of_dir[size_t(Dir::E)];
  const int b_to_a = g.profile(b).port_of_dir[size_t(Dir::W)];
  Script prog;
  prog.acts[{1, 0}] = a_to_b;
  prog.acts[{2, 0}] = b_to_a;
  prog.acts[{1, 1}] = -1;
  prog.acts[{2, 1}] = -1;
  auto policy = make_none_policy();
  RoundTrace trace;
  std::vector<Script::Mem> mems;
  const auto res = run_simulation(g, {a, b}, prog, *policy, 10, trace, &mems);
  CHECK(res.dispersed);
  // Neither robot ever observed the other: they were at distinct nodes at
  // every communicate, including the round they crossed mid-edge.
  CHECK(mems[0].seen.empty());
  CHECK(mems[1].seen.empty());
}

TEST_CASE("crashes land before communicate and stay invisible") {
  const Grid g = small_grid();
  Script prog;
  prog.acts[{1, 5}] = -1;
  auto policy = make_fixed_policy({{2, RobotId{2}}});
  RoundTrace trace;
  std::vector<Script::Mem> mems;
  const auto res = run_simulation(g, {5, 5}, prog, *policy, 10, trace, &mems);
  CHECK(res.crash_count == 1);
  CHECK(res.dispersed);  // survivor settled alone
  CHECK(saw(mems[0], 1, 2));        // visible the round before the crash
  CHECK_FALSE(saw(mems[0], 2, 2));  // gone from the crash round onward
  CHECK_FALSE(saw(mems[0], 3, 2));
  bool crash_event_at_2 = false;
  for (const auto& e : trace.events()) {
    if (e.ev == Ev::Crashed) {
      CHECK(e.round == 2);
      CHECK(e.id == 2);
      crash_event_at_2 = true;
    }
  }
  CHECK(crash_event_at_2);
}

TEST_CASE("settled robots stay visible but never move again") {
  const Grid g = small_grid();
  Script prog;
  prog.acts[{1, 0}] = -1;
  prog.acts[{1, 2}] = 1;  // ignored: robot settled at round 0
  prog.acts[{2, 4}] = -1;
  auto policy = make_none_policy();
  RoundTrace trace;
  std::vector<Script::Mem> mems;
  const auto res = run_simulation(g, {5, 5}, prog, *policy, 10, trace, &mems);
  CHECK_FALSE(res.dispersed);  // two live robots on one node
  CHECK(res.completed);
  for (const auto& e : trace.events()) {
    if (e.ev == Ev::Moved) FAIL("settled robot moved");
  }
  // The unsettled robot kept seeing the settled one.
  CHECK(saw(mems[1], 3, 1));
}

TEST_CASE("invalid port surfaces as a simulation error naming the robot") {
  const Grid g = small_grid();
  Script prog;
  prog.acts[{1, 0}] = 9;
  auto policy = make_none_policy();
  RoundTrace trace;
  CHECK_THROWS_AS(run_simulation(g, {5}, prog, *policy, 10, trace), SimulationError);
}

TEST_CASE("k and placement validation") {
  const Grid g = small_grid();
  Script prog;
  auto policy = make_none_policy();
  RoundTrace trace;
  Placement too_many(17, NodeId{0});
  CHECK_THROWS_AS(run_simulation(g, too_many, prog, *policy, 10, trace), ConfigError);
  CHECK_THROWS_AS(run_simulation(g, {}, prog, *policy, 10, trace), ConfigError);
  CHECK_THROWS_AS(run_simulation(g, {NodeId{16}}, prog, *policy, 10, trace), ConfigError);
}

TEST_CASE("budget exhaustion is flagged distinctly") {
  const Grid g = small_grid();
  Script prog;  // nobody ever settles
  auto policy = make_none_policy();
  RoundTrace trace;
  const auto res = run_simulation(g, {0, 5}, prog, *policy, 7, trace);
  CHECK_FALSE(res.completed);
  CHECK_FALSE(res.dispersed);
  CHECK(res.rounds_used == 7);
}

TEST_CASE("lone robot settling at round 0 reports zero rounds used") {
  const Grid g = small_grid();
  Script prog;
  prog.acts[{1, 0}] = -1;
  auto policy = make_none_policy();
  RoundTrace trace;
  const auto res = run_simulation(g, {3}, prog, *policy, 10, trace);
  CHECK(res.dispersed);
  CHECK(res.rounds_used == 0);
}

TEST_CASE("memory metering: id-only robot at k=16 peaks at 4 bits") {
  const Grid g = small_grid();
  Script prog;
  for (RobotId i = 1; i <= 16; ++i) prog.acts[{i, 0}] = -1;
  auto policy = make_none_policy();
  RoundTrace trace;
  Placement placement;
  for (NodeId v = 0; v < 16; ++v) placement.push_back(v);
  const auto res = run_simulation(g, placement, prog, *policy, 10, trace);
  CHECK(res.peak_memory_bits_max == 4);
  CHECK(res.dispersed);
}

TEST_CASE("identical runs produce identical trace digests") {
  const Grid g = small_grid();
  Script prog;
  prog.acts[{1, 0}] = 1;
  prog.acts[{1, 1}] = -1;
  prog.acts[{2, 2}] = -1;
  auto p1 = make_fixed_policy({{1, RobotId{3}}});
  auto p2 = p1->clone();
  RoundTrace t1, t2;
  const auto r1 = run_simulation(g, {5, 6, 9}, prog, *p1, 50, t1);
  const auto r2 = run_simulation(g, {5, 6, 9}, prog, *p2, 50, t2);
  CHECK(r1.trace_digest == r2.trace_digest);
  CHECK(t1.size() == t2.size());
}

TEST_CASE("trace JSONL round trip preserves the digest") {
  const Grid g = small_grid();
  Script prog;
  prog.acts[{1, 0}] = 1;
  prog.acts[{1, 1}] = -1;
  prog.acts[{2, 0}] = -1;
  auto policy = make_none_policy();
  RoundTrace trace;
  run_simulation(g, {5, 9}, prog, *policy, 50, trace);

  std::stringstream ss;
  trace.write_jsonl(ss);
  const RoundTrace back = RoundTrace::read_jsonl(ss);
  CHECK(back.digest() == trace.digest());
  CHECK(back.size() == trace.size());

  // Tampering changes the digest.
  std::string text = ss.str();
  const auto pos = text.find("\"arg\":1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 7, "\"arg\":2");
  std::stringstream tampered(text);
  CHECK(RoundTrace::read_jsonl(tampered).digest() != trace.digest());
}
