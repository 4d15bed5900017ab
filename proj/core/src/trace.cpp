#include "griddisp/trace.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace griddisp {

namespace {
constexpr uint64_t kFnvPrime = 1099511628211ULL;
}

uint64_t RoundTrace::fnv1a(std::string_view bytes, uint64_t seed) {
  uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string RoundTrace::canonical_line(const TraceEvent& e) {
  char buf[160];
  int n;
  switch (e.ev) {
    case Ev::Moved:
    case Ev::Merged:
      n = std::snprintf(buf, sizeof buf, "{\"r\":%lld,\"id\":%d,\"ev\":\"%s\",\"arg\":%d}",
                        static_cast<long long>(e.round), e.id, to_string(e.ev), e.arg);
      break;
    case Ev::Phase:
      n = std::snprintf(buf, sizeof buf, "{\"r\":%lld,\"id\":%d,\"ev\":\"phase\",\"arg\":\"%.*s\"}",
                        static_cast<long long>(e.round), e.id, int(e.tag.size()), e.tag.data());
      break;
    default:
      n = std::snprintf(buf, sizeof buf, "{\"r\":%lld,\"id\":%d,\"ev\":\"%s\",\"arg\":null}",
                        static_cast<long long>(e.round), e.id, to_string(e.ev));
      break;
  }
  return std::string(buf, size_t(n));
}

void RoundTrace::append(const TraceEvent& e) {
  events_.push_back(e);
  const std::string line = canonical_line(e);
  digest_ = fnv1a(line, digest_);
  digest_ = fnv1a("\n", digest_);
}

void RoundTrace::write_jsonl(std::ostream& os) const {
  for (const auto& e : events_) os << canonical_line(e) << '\n';
}

RoundTrace RoundTrace::read_jsonl(std::istream& is) {
  RoundTrace t;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& ex) {
      throw ConfigError(std::string("trace: bad JSONL line: ") + ex.what());
    }
    TraceEvent e;
    e.round = j.at("r").get<Round>();
    e.id = j.at("id").get<RobotId>();
    const std::string ev = j.at("ev").get<std::string>();
    if (ev == "moved") {
      e.ev = Ev::Moved;
      e.arg = j.at("arg").get<int>();
    } else if (ev == "settled") {
      e.ev = Ev::Settled;
    } else if (ev == "crashed") {
      e.ev = Ev::Crashed;
    } else if (ev == "merged") {
      e.ev = Ev::Merged;
      e.arg = j.at("arg").get<int>();
    } else if (ev == "phase") {
      e.ev = Ev::Phase;
      t.owned_tags_.push_back(j.at("arg").get<std::string>());
      // Tag views may dangle if owned_tags_ reallocates; patch views at end.
      e.tag = {};
      e.arg = int32_t(t.owned_tags_.size()) - 1;
    } else {
      throw ConfigError("trace: unknown event '" + ev + "'");
    }
    t.events_.push_back(e);
  }
  // Resolve owned tag views now that the tag storage is stable.
  for (auto& e : t.events_) {
    if (e.ev == Ev::Phase) {
      e.tag = t.owned_tags_[size_t(e.arg)];
      e.arg = 0;
    }
  }
  // Rebuild the digest from canonical lines.
  t.digest_ = kFnvOffset;
  for (const auto& e : t.events_) {
    const std::string line = canonical_line(e);
    t.digest_ = fnv1a(line, t.digest_);
    t.digest_ = fnv1a("\n", t.digest_);
  }
  return t;
}

}  // namespace griddisp
