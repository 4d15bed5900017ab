#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "griddisp/types.hpp"

namespace griddisp {

enum class Ev : uint8_t { Moved, Settled, Crashed, Merged, Phase };

inline const char* to_string(Ev e) {
  switch (e) {
    case Ev::Moved: return "moved";
    case Ev::Settled: return "settled";
    case Ev::Crashed: return "crashed";
    case Ev::Merged: return "merged";
    default: return "phase";
  }
}

// One trace event. `arg` is the port for Moved and the new group anchor id
// for Merged; `tag` is the phase name for Phase events (always a string with
// static storage, supplied by the protocol).
struct TraceEvent {
  Round round = 0;
  RobotId id = 0;
  Ev ev = Ev::Moved;
  int32_t arg = 0;
  std::string_view tag{};
};

// Append-only event log with a rolling 64-bit FNV-1a digest over the
// canonical JSONL byte stream (one line per event, '\n' terminated).
class RoundTrace {
 public:
  void append(const TraceEvent& e);
  const std::vector<TraceEvent>& events() const { return events_; }
  uint64_t digest() const { return digest_; }
  size_t size() const { return events_.size(); }

  static std::string canonical_line(const TraceEvent& e);

  void write_jsonl(std::ostream& os) const;
  // Parses a JSONL stream produced by write_jsonl. Phase tags are owned by
  // the returned trace. Throws ConfigError on malformed lines.
  static RoundTrace read_jsonl(std::istream& is);

  // Digest of raw bytes, used by replay to detect tampering.
  static uint64_t fnv1a(std::string_view bytes, uint64_t seed = kFnvOffset);
  static constexpr uint64_t kFnvOffset = 14695981039346656037ULL;

 private:
  std::vector<TraceEvent> events_;
  std::vector<std::string> owned_tags_;
  uint64_t digest_ = kFnvOffset;
};

}  // namespace griddisp
