#include "griddisp/kernels.hpp"

namespace griddisp {

int resolve_straight_port(int backward, std::array<uint8_t, 2> r) {
  if (backward == r[0]) return r[1];
  if (backward == r[1]) return r[0];
  for (int p = 1; p <= 4; ++p) {
    if (p != backward && p != r[0] && p != r[1]) return p;
  }
  throw SimulationError("resolve_straight_port: degenerate return set");
}

void ProbeDfs::arm(int backward_port, bool early_exit) {
  st_ = St::Depart;
  early_exit_ = early_exit;
  backward_ = uint8_t(backward_port);
  depth_ = -1;
  descending_ = false;
  r_count_ = 0;
  r_ = {0, 0};
  lvl_ = {};
}

int ProbeDfs::descend_or_backtrack(int degree) {
  Lvl& l = lvl_[size_t(depth_)];
  for (int p = l.tried + 1; p <= degree; ++p) {
    if (p == l.entry) continue;
    l.tried = uint8_t(p);
    descending_ = true;
    ++depth_;
    return p;
  }
  // Children exhausted: retrace the entry edge.
  descending_ = false;
  const int up = l.entry;
  --depth_;
  if (depth_ < 0) st_ = St::Home;
  return up;
}

int ProbeDfs::tick(int degree, int entry_port, bool landmark_here) {
  switch (st_) {
    case St::Idle:
    case St::Done:
      return 0;
    case St::Depart: {
      // Still at the start node: leave through the minimum non-backward port.
      st_ = St::Walk;
      depth_ = 0;
      descending_ = true;
      for (int p = 1; p <= degree; ++p) {
        if (p != backward_) {
          lvl_[0] = Lvl{};
          return p;
        }
      }
      throw SimulationError("probe: no departure port");
    }
    case St::Home:
      // Arrived back at the start node after the full enumeration.
      st_ = St::Done;
      return 0;
    case St::Walk:
      break;
  }

  if (descending_) {
    Lvl& l = lvl_[size_t(depth_)];
    l.entry = uint8_t(entry_port);
    l.tried = 0;
    if (depth_ == 3) {
      // Leaf: an arrival back at the start node shows up as a co-located
      // landmark; only unit squares close here, so record the entry port.
      if (landmark_here && r_count_ < 2 && r_[0] != entry_port) {
        r_[r_count_++] = uint8_t(entry_port);
        if (early_exit_ && r_count_ == 2) {
          st_ = St::Done;  // both loops found and we are standing at v
          return 0;
        }
      }
      descending_ = false;
      --depth_;
      return entry_port;
    }
    return descend_or_backtrack(degree);
  }
  // Ascending arrival: resume the interrupted level.
  return descend_or_backtrack(degree);
}

bool PortHunt::observe(int degree, int entry_port) {
  switch (mode) {
    case Mode::AtNode:
      return false;
    case Mode::Outbound: {
      const bool accept = want_internal ? degree == 4 : degree <= 3;
      if (accept) {
        mode = Mode::AtNode;
        backward = uint8_t(entry_port);
        tried = 0;
        pending = 0;
        return true;
      }
      retreat = uint8_t(entry_port);
      mode = Mode::Retreating;
      return false;
    }
    case Mode::Retreating:
      mode = Mode::AtNode;
      tried = uint8_t(tried | (1u << pending));
      pending = 0;
      return false;
  }
  return false;
}

int PortHunt::choose(int degree) {
  if (mode == Mode::Retreating) return retreat;
  if (mode != Mode::AtNode) throw SimulationError("port hunt: choose with move in flight");
  for (int p = 1; p <= degree; ++p) {
    if (p == backward) continue;
    if (tried & (1u << p)) continue;
    pending = uint8_t(p);
    mode = Mode::Outbound;
    return p;
  }
  throw SimulationError("port hunt: no candidate port left");
}

}  // namespace griddisp
