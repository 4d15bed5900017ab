#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "griddisp/adversary.hpp"

using namespace griddisp;

namespace {

std::vector<RobotPublic> world(std::initializer_list<RobotPublic> rs) { return rs; }

}  // namespace

TEST_CASE("none policy never crashes anyone") {
  auto p = make_none_policy();
  std::vector<RobotId> out{99};
  for (Round r = 0; r < 50; ++r) {
    p->plan(r, {}, out);
    CHECK(out.empty());
  }
}

TEST_CASE("fixed schedule fires exactly at its rounds") {
  auto p = make_fixed_policy({{5, 3}, {5, 1}, {9, 2}});
  std::vector<RobotId> out;
  p->plan(4, {}, out);
  CHECK(out.empty());
  p->plan(5, {}, out);
  CHECK(out == std::vector<RobotId>{1, 3});
  p->plan(9, {}, out);
  CHECK(out == std::vector<RobotId>{2});
}

TEST_CASE("random policy is deterministic and capped") {
  const auto w = world({{1, 0, false, "x"},
                        {2, 0, false, "x"},
                        {3, 0, false, "x"},
                        {4, 0, false, "x"}});
  auto a = make_random_policy(0.9, 7, 2);
  auto b = make_random_policy(0.9, 7, 2);
  std::vector<RobotId> oa, ob;
  int total_a = 0;
  for (Round r = 0; r < 20; ++r) {
    a->plan(r, w, oa);
    b->plan(r, w, ob);
    CHECK(oa == ob);
    total_a += int(oa.size());
  }
  CHECK(total_a <= 2);  // budget respected even with p = 0.9
}

TEST_CASE("random policy with different seeds diverges") {
  const auto w = world({{1, 0, false, "x"}, {2, 0, false, "x"}, {3, 0, false, "x"}});
  auto a = make_random_policy(0.5, 1, 100);
  auto b = make_random_policy(0.5, 2, 100);
  std::vector<RobotId> oa, ob;
  bool differed = false;
  for (Round r = 0; r < 30 && !differed; ++r) {
    a->plan(r, w, oa);
    b->plan(r, w, ob);
    differed = oa != ob;
  }
  CHECK(differed);
}

TEST_CASE("target_scouts kills a freshly departed probe cohort") {
  auto p = make_target_scouts_policy(3, 1.0, 100);
  std::vector<RobotId> out;
  // Round 0: nobody is scouting yet.
  p->plan(0, world({{1, 5, false, "a3.line"}, {2, 5, false, "a3.line"}}), out);
  CHECK(out.empty());
  // Round 1: robot 2 has just entered a probe phase -> cohort killed.
  p->plan(1, world({{1, 5, false, "a3.line"}, {2, 6, false, "a3.probe"}}), out);
  CHECK(out == std::vector<RobotId>{2});
  // Round 2: robot 2 is gone; robot 1 still waiting is untouched.
  p->plan(2, world({{1, 5, false, "a3.line"}}), out);
  CHECK(out.empty());
}

TEST_CASE("target_scouts also hunts seekers and respects its cap") {
  auto p = make_target_scouts_policy(3, 1.0, 1);
  std::vector<RobotId> out;
  p->plan(0, world({{1, 0, false, "a3.seek"}, {2, 0, false, "a3.seek"}}), out);
  CHECK(out.size() == 1);  // cap of one crash
  p->plan(1, world({{1, 0, false, "a3.seek"}, {2, 0, false, "a3.seek"}}), out);
  CHECK(out.empty());
}

TEST_CASE("policy JSON factory") {
  CHECK(CrashPolicy::from_json(R"({"policy":"none"})")->describe() == "none");
  CHECK(CrashPolicy::from_json(R"({"policy":"fixed","schedule":[[3,1]]})")->describe() ==
        "fixed(1)");
  CHECK(CrashPolicy::from_json(R"({"policy":"random","p":0.05,"seed":9})")->describe() ==
        "random(p=0.05,seed=9)");
  CHECK(CrashPolicy::from_json(R"({"policy":"target_scouts","q":0.5,"seed":2})")->describe() ==
        "target_scouts(q=0.5,seed=2)");
  CHECK_THROWS_AS(CrashPolicy::from_json(R"({"policy":"bogus"})"), ConfigError);
}
