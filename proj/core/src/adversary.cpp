#include "griddisp/adversary.hpp"

#include <algorithm>

#include "griddisp/rng.hpp"
#include "json.hpp"

namespace griddisp {

namespace {

class NonePolicy final : public CrashPolicy {
 public:
  void plan(Round, std::span<const RobotPublic>, std::vector<RobotId>& out) override {
    out.clear();
  }
  std::string describe() const override { return "none"; }
  std::unique_ptr<CrashPolicy> clone() const override { return std::make_unique<NonePolicy>(); }
};

class FixedPolicy final : public CrashPolicy {
 public:
  explicit FixedPolicy(std::vector<std::pair<Round, RobotId>> sched) : sched_(std::move(sched)) {}
  void plan(Round round, std::span<const RobotPublic>, std::vector<RobotId>& out) override {
    out.clear();
    for (const auto& [r, id] : sched_) {
      if (r == round) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
  }
  std::string describe() const override {
    return "fixed(" + std::to_string(sched_.size()) + ")";
  }
  std::unique_ptr<CrashPolicy> clone() const override {
    return std::make_unique<FixedPolicy>(sched_);
  }

 private:
  std::vector<std::pair<Round, RobotId>> sched_;
};

class RandomPolicy final : public CrashPolicy {
 public:
  RandomPolicy(double p, uint64_t seed, long cap) : p_(p), seed_(seed), left_(cap) {}
  bool needs_world() const override { return true; }
  void plan(Round round, std::span<const RobotPublic> world, std::vector<RobotId>& out) override {
    out.clear();
    if (left_ <= 0) return;
    for (const auto& r : world) {
      if (left_ <= long(out.size())) break;
      if (unit_double(mix_key(seed_, uint64_t(round), uint64_t(r.id))) < p_) {
        out.push_back(r.id);
      }
    }
    left_ -= long(out.size());
  }
  std::string describe() const override {
    char buf[48];
    std::snprintf(buf, sizeof buf, "random(p=%g,seed=%llu)", p_,
                  static_cast<unsigned long long>(seed_));
    return buf;
  }
  std::unique_ptr<CrashPolicy> clone() const override {
    return std::make_unique<RandomPolicy>(p_, seed_, left_init());
  }

 private:
  long left_init() const { return left_; }  // clone before first use
  double p_;
  uint64_t seed_;
  long left_;
};

// Watches for robots entering a probing or seeking phase and kills the whole
// departing cohort (grouped by node) with probability q per departure.
class TargetScoutsPolicy final : public CrashPolicy {
 public:
  TargetScoutsPolicy(uint64_t seed, double q, long cap) : seed_(seed), q_(q), left_(cap) {}
  bool needs_world() const override { return true; }
  void plan(Round round, std::span<const RobotPublic> world, std::vector<RobotId>& out) override {
    out.clear();
    std::map<NodeId, std::vector<RobotId>> fresh;
    for (const auto& r : world) {
      const bool scouting = is_scout_phase(r.phase);
      auto it = last_phase_.find(r.id);
      const bool was = it != last_phase_.end() && is_scout_phase(it->second);
      if (scouting && !was) fresh[r.at].push_back(r.id);
      last_phase_[r.id] = std::string(r.phase);
    }
    for (auto& [node, ids] : fresh) {
      if (left_ <= 0) break;
      if (unit_double(mix_key(seed_, uint64_t(round), uint64_t(node))) >= q_) continue;
      std::sort(ids.begin(), ids.end());
      for (RobotId id : ids) {
        if (left_ <= 0) break;
        out.push_back(id);
        --left_;
      }
    }
  }
  std::string describe() const override {
    char buf[56];
    std::snprintf(buf, sizeof buf, "target_scouts(q=%g,seed=%llu)", q_,
                  static_cast<unsigned long long>(seed_));
    return buf;
  }
  std::unique_ptr<CrashPolicy> clone() const override {
    return std::make_unique<TargetScoutsPolicy>(seed_, q_, left_);
  }

 private:
  static bool is_scout_phase(std::string_view phase) {
    return phase.find("probe") != std::string_view::npos ||
           phase.find("seek") != std::string_view::npos;
  }
  uint64_t seed_;
  double q_;
  long left_;
  std::map<RobotId, std::string> last_phase_;
};

}  // namespace

std::unique_ptr<CrashPolicy> make_none_policy() { return std::make_unique<NonePolicy>(); }

std::unique_ptr<CrashPolicy> make_fixed_policy(std::vector<std::pair<Round, RobotId>> schedule) {
  return std::make_unique<FixedPolicy>(std::move(schedule));
}

std::unique_ptr<CrashPolicy> make_random_policy(double p, uint64_t seed, long cap) {
  return std::make_unique<RandomPolicy>(p, seed, cap);
}

std::unique_ptr<CrashPolicy> make_target_scouts_policy(uint64_t seed, double q, long cap) {
  return std::make_unique<TargetScoutsPolicy>(seed, q, cap);
}

std::unique_ptr<CrashPolicy> CrashPolicy::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const std::string kind = j.value("policy", "none");
  const long cap = j.value("cap", long{1} << 40);
  if (kind == "none") return make_none_policy();
  if (kind == "fixed") {
    std::vector<std::pair<Round, RobotId>> sched;
    for (const auto& e : j.at("schedule")) {
      sched.emplace_back(e.at(0).get<Round>(), e.at(1).get<RobotId>());
    }
    return make_fixed_policy(std::move(sched));
  }
  if (kind == "random") {
    return make_random_policy(j.at("p").get<double>(), j.value("seed", uint64_t{0}), cap);
  }
  if (kind == "target_scouts") {
    return make_target_scouts_policy(j.value("seed", uint64_t{0}), j.value("q", 1.0), cap);
  }
  throw ConfigError("adversary: unknown policy '" + kind + "'");
}

}  // namespace griddisp
