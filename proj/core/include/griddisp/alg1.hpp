#pragma once

#include <cstdint>
#include <string_view>

#include "griddisp/engine.hpp"
#include "griddisp/protocol_common.hpp"

namespace griddisp {

struct GroupScan;

// Identifies an oriented corner by its incident directions:
// {E,S} -> NW, {W,S} -> NE, {W,N} -> SE, {E,N} -> SW.
// Throws ConfigError unless called on an oriented degree-2 profile.
Quadrant corner_identity(const NodeProfile& profile);

// Crash-tolerant dispersion on oriented grids. Orientation gives straight
// movement for free (one round per hop), so the whole protocol runs on a
// fixed global schedule: gather at the corners by 2L rounds, then either
// balance across the four corners and fill quadrant columns (even branch,
// 8L rounds total) or meet at the unique center, relocate to the NW corner
// and fill full columns from there (odd branch, 6L rounds total), where L
// is the long grid dimension.
class Alg1 {
 public:
  enum class Phase : uint8_t {
    Start,
    ToBoundary,
    WaitBoundary,
    ToCorner,
    Corner,
    Balance,
    Kept,
    MidWalk,
    ToCenter,
    AtCenter,
    ToNwNorth,
    ToNwWest,
    NwWait,
    Dispatch,
    SettleCol,
    Done,
  };

  struct Mem {
    RobotId id = 0;
    Round tick = 0;
    Phase phase = Phase::Start;
    Dir heading = Dir::W;
    uint8_t kept = 0;
    uint8_t corners_passed = 0;
    uint16_t steps_left = 0;
    uint16_t col = 0;
    Quadrant quadrant = Quadrant::NW;
  };

  explicit Alg1(const ProgramConfig& cfg);

  Mem init(RobotId id) const {
    Mem m;
    m.id = id;
    return m;
  }
  StepOut step(Mem& self, const StepCtx<Mem>& ctx) const;
  int memory_bits(const Mem&) const;
  std::string_view phase(const Mem& m) const;
  long retries(const Mem&) const { return 0; }
  std::string_view name() const { return "alg1"; }

  bool odd_branch() const { return odd_; }
  Round total_budget() const;

 private:
  int quadrant_cols(Quadrant q) const;
  int quadrant_depth(Quadrant q) const;
  static bool settle_candidate(const Mem& m);
  StepOut settle_col_move(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut begin_dispatch(Mem& self, const StepCtx<Mem>& ctx, const GroupScan& g, int ncols,
                         Dir walk, Dir descend) const;
  StepOut step_even(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_odd(Mem& self, const StepCtx<Mem>& ctx) const;

  ProgramConfig cfg_;
  bool odd_ = false;  // both dimensions odd: unique center exists
};

}  // namespace griddisp
