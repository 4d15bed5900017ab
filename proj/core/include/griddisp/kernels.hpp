#pragma once

#include <array>
#include <cstdint>

#include "griddisp/engine.hpp"
#include "griddisp/types.hpp"

namespace griddisp {

// Given the backward port b and the two ports R through which a probing
// scout re-entered the start node (the two unit-square loops through the
// departure edge), returns the port at 180 degrees from b:
//   (i)  b in R: the other member of R,
//   (ii) b not in R: the unique port outside R and b (the departure port).
// Requires a degree-4 node and |R| = 2.
int resolve_straight_port(int backward, std::array<uint8_t, 2> r_set);

// Scout-side probe: walks out of the start node v through the minimum
// non-backward port, enumerates all non-backtracking walks of three more
// hops depth-first (minimum port first), records the entry port of every
// arrival back at v (recognized by a co-located landmark id), and retraces
// home. Completes within sched::kRhop move rounds; exactly 80 when nothing
// is pruned and early exit is off.
//
// Driving contract, once per round while active:
//   port = tick(degree, entry_port, landmark_here);
//   port > 0  -> move through it;  port == 0 -> probe finished, stay.
// The first tick must happen while still at v (entry_port = the backward
// port of the group); it returns the departure port.
class ProbeDfs {
 public:
  void arm(int backward_port, bool early_exit);
  int tick(int degree, int entry_port, bool landmark_here);

  bool armed() const { return st_ != St::Idle; }
  bool finished() const { return st_ == St::Done; }
  // True right after tick() issued the final move back to the start node;
  // the scout can publish its result one round before physically arriving.
  bool homing() const { return st_ == St::Home; }
  int r_count() const { return r_count_; }
  std::array<uint8_t, 2> r_set() const { return r_; }

  // Declared widths: 4 stack levels * (entry 2 + last-tried 2), R 2*2,
  // counters and flags.
  static constexpr int kBits = 4 * 4 + 4 + 6;

 private:
  enum class St : uint8_t { Idle, Depart, Walk, Home, Done };
  struct Lvl {
    uint8_t entry = 0;
    uint8_t tried = 0;  // last child port tried from this level
  };
  int descend_or_backtrack(int degree);

  St st_ = St::Idle;
  bool early_exit_ = false;
  bool descending_ = false;
  int8_t depth_ = -1;  // current level index: 0 at the first node out of v
  uint8_t backward_ = 0;
  std::array<Lvl, 4> lvl_{};
  uint8_t r_count_ = 0;
  std::array<uint8_t, 2> r_{0, 0};
};

// Probes candidate ports in ascending order (skipping the backward port)
// until the arrival degree satisfies the target class, stepping back out of
// rejected nodes. Drives both the boundary walk (accept degree <= 3) and
// column entry from a boundary node (accept degree == 4).
struct PortHunt {
  enum class Mode : uint8_t { AtNode, Outbound, Retreating };
  Mode mode = Mode::AtNode;
  bool want_internal = false;
  uint8_t backward = 0;
  uint8_t tried = 0;    // bitmask of rejected candidate ports
  uint8_t pending = 0;  // candidate in flight
  uint8_t retreat = 0;  // entry port at the rejected node

  void start(int backward_port, bool internal_target) {
    mode = Mode::AtNode;
    want_internal = internal_target;
    backward = uint8_t(backward_port);
    tried = 0;
    pending = 0;
  }
  // Processes the previous move's arrival; returns true when that arrival
  // committed (robot now stands on an accepted node; backward updated).
  bool observe(int degree, int entry_port);
  // Next move port: a retreat or the next untried candidate. Throws
  // SimulationError if no candidate remains (protocol bug surface).
  int choose(int degree);

  static constexpr int kBits = 2 + 2 + 4 + 2 + 2 + 1;
};

// Boundary navigation with hop and corner accounting. The caller checks
// stop conditions whenever observe() reports a committed arrival.
struct BoundaryWalk {
  PortHunt hunt{};
  uint16_t hops = 0;
  uint8_t corners = 0;  // degree-2 arrivals since reset

  void reset(int backward_port) {
    hunt.start(backward_port, false);
    hops = 0;
    corners = 0;
  }
  bool observe(int degree, int entry_port) {
    if (!hunt.observe(degree, entry_port)) return false;
    ++hops;
    if (degree == 2) ++corners;
    return true;
  }
  int choose(int degree) { return hunt.choose(degree); }

  static constexpr int kBits = PortHunt::kBits + 12 + 3;
};

// ---- Group census helpers -------------------------------------------------
//
// All members of a moving group are co-located and run identical code over
// identical communicate snapshots, so each recomputes the same membership
// and roles locally every time they are needed; nothing about the group is
// stored beyond the anchor (minimum) id.

struct GroupScan {
  int count = 0;
  RobotId min_id = 0;
  RobotId max_id = 0;
  int rank = 0;  // 0-based rank of `self` among matching ids (ascending)
};

// Scans the communicate snapshot for robots matching `member`. The predicate
// is applied uniformly, including to the caller's own snapshot entry, so all
// co-located robots compute the same census from the same snapshot.
template <class Mem, class Pred>
GroupScan scan_group(RobotId self, const StepCtx<Mem>& ctx, Pred&& member) {
  GroupScan g;
  for (const auto& p : ctx.colocated) {
    if (!member(p)) continue;
    if (g.count == 0 || p.id < g.min_id) g.min_id = p.id;
    if (p.id > g.max_id) g.max_id = p.id;
    if (p.id < self) ++g.rank;
    ++g.count;
  }
  return g;
}

template <class Mem>
bool settled_peer_here(RobotId self, const StepCtx<Mem>& ctx, RobotId* who = nullptr) {
  for (const auto& p : ctx.colocated) {
    if (p.id != self && p.settled) {
      if (who) *who = p.id;
      return true;
    }
  }
  return false;
}

}  // namespace griddisp
