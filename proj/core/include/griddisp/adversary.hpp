#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "griddisp/types.hpp"

namespace griddisp {

// Adversary-visible snapshot of one robot at the start of a round. The
// adversary is omniscient: it may inspect location and protocol phase.
struct RobotPublic {
  RobotId id = 0;
  NodeId at = 0;
  bool settled = false;
  std::string_view phase{};
};

// Produces the set of robots to crash at the start of each round. Policies
// are deterministic given their seed and the observed world; they carry the
// remaining crash budget as state, so one instance drives exactly one run.
class CrashPolicy {
 public:
  virtual ~CrashPolicy() = default;
  virtual bool needs_world() const { return false; }
  virtual void plan(Round round, std::span<const RobotPublic> world,
                    std::vector<RobotId>& out) = 0;
  virtual std::string describe() const = 0;
  virtual std::unique_ptr<CrashPolicy> clone() const = 0;

  static std::unique_ptr<CrashPolicy> from_json(const std::string& text);
};

std::unique_ptr<CrashPolicy> make_none_policy();
std::unique_ptr<CrashPolicy> make_fixed_policy(std::vector<std::pair<Round, RobotId>> schedule);
// Each live robot crashes with probability p each round, at most `cap` total.
std::unique_ptr<CrashPolicy> make_random_policy(double p, uint64_t seed, long cap);
// Crashes entire scout/seeker cohorts right after they depart, with
// probability q per cohort, at most `cap` robots total.
std::unique_ptr<CrashPolicy> make_target_scouts_policy(uint64_t seed, double q, long cap);

}  // namespace griddisp
