#include "griddisp/engine.hpp"

#include "griddisp/rng.hpp"
#include "json.hpp"

namespace griddisp {

Placement placement_from_seed(const Grid& grid, int k, uint64_t seed) {
  if (k < 1) throw ConfigError("placement: k must be >= 1");
  if (int64_t(k) > grid.node_count()) throw ConfigError("placement: k exceeds node count");
  Placement p(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    p[size_t(i)] = NodeId(bounded(mix_key(seed, uint64_t(i + 1)), uint64_t(grid.node_count())));
  }
  return p;
}

std::string SimulationResult::to_json() const {
  nlohmann::ordered_json j;
  j["dispersed"] = dispersed;
  j["completed"] = completed;
  j["rounds_used"] = rounds_used;
  j["robots"] = robot_count;
  j["crashes"] = crash_count;
  j["peak_memory_bits_max"] = peak_memory_bits_max;
  j["peak_memory_bits"] = peak_memory_bits;
  j["retries_total"] = retries_total;
  char digest[20];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(trace_digest));
  j["trace_digest"] = digest;
  nlohmann::ordered_json spans;
  for (const auto& [tag, span] : phase_spans) {
    spans[tag] = {span.first, span.second};
  }
  j["phase_spans"] = std::move(spans);
  return j.dump();
}

}  // namespace griddisp
