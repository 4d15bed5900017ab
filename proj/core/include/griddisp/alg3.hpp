#pragma once

#include <cstdint>
#include <string_view>

#include "griddisp/engine.hpp"
#include "griddisp/kernels.hpp"
#include "griddisp/protocol_common.hpp"

namespace griddisp {

// Crash-tolerant dispersion on unoriented grids. The structure follows the
// non-faulty protocol, with every coordination step replaced by a halving
// scheme that survives adversarial crashes:
//   Stage 1: straight-line hops probe with the higher-id half of the group
//     as scouts; a failed window (all scouts or all landmarks dead) at
//     least halves the group, so at most ceil(log2 k) windows are wasted.
//   Stage 2: fixed 12L-round trips; each corner sends its higher-id half
//     around the boundary as seekers. A corner commits to a target only
//     when a returned seeker and a stationary non-seeker independently name
//     the same (minimum id, corner offset); otherwise the survivors halve
//     and retry, for at most ceil(log2 n) trips.
//   Stage 3: the gathered corner dispatches floor(C/m) robots to each of
//     the m still-needy columns per fixed-length iteration; leftovers from
//     filled columns walk home and report saturation, and every corner
//     robot keeps the replicated column table, so any survivor can carry
//     the coordination on.
class Alg3 {
 public:
  enum class Phase : uint8_t {
    Start,
    Line,
    Probe,
    BWalk,
    Corner,
    Seek,
    Relocate,
    Gathered,
    DispatchWalk,
    ColEntry,
    SettleLine,
    SettleScout,
    WalkHome,
    BSettle,
    Done,
  };

  struct Mem {
    RobotId id = 0;
    Round tick = 0;
    Phase phase = Phase::Start;
    // Straight-line journey.
    uint8_t backward = 0;
    uint8_t straight = 0;
    uint8_t probe_ok = 0;
    uint8_t hop_pending = 0;
    uint8_t resynced = 0;
    uint8_t hop_round = 0;
    RobotId anchor = 0;
    ProbeDfs dfs{};
    BoundaryWalk bw{};
    // Stage-2 seeker record and non-seeker accumulator.
    RobotId rec_min = 0;
    uint8_t rec_off = 0;
    uint8_t trav_corners = 0;
    uint8_t entered_port = 0;
    uint8_t at_corner = 0;
    uint8_t first_long = 0;
    RobotId nrec_min = 0;
    uint8_t nrec_d = 0;
    uint8_t committed = 0;
    uint8_t target_d = 0;
    uint8_t reloc_left = 0;
    uint8_t long_port = 0;
    uint16_t side_hops = 0;
    // Stage-3 column table, replicated in every corner robot.
    uint64_t sat_mask = 0;
    uint16_t col = 0;
    uint16_t saturated_col = 0;
    uint8_t sweeping = 0;
    int32_t retry_count = 0;
  };

  explicit Alg3(const ProgramConfig& cfg);

  Mem init(RobotId id) const {
    Mem m;
    m.id = id;
    m.anchor = id;
    return m;
  }
  StepOut step(Mem& self, const StepCtx<Mem>& ctx) const;
  int memory_bits(const Mem& m) const;
  std::string_view phase(const Mem& m) const;
  long retries(const Mem& m) const { return m.retry_count; }
  std::string_view name() const { return "alg3"; }

  Round t1() const { return t1_; }
  Round t_reloc() const { return t_reloc_; }
  Round t2() const { return t2_; }
  Round iter_window() const { return iter_w_; }
  Round budget() const;
  int max_trips() const { return log_n_; }

 private:
  bool landmark_here(const Mem& self, const StepCtx<Mem>& ctx) const;
  int published_straight(const Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut scout_tick(Mem& self, const StepCtx<Mem>& ctx, Phase line_phase) const;
  StepOut begin_boundary_walk(Mem& self, const StepCtx<Mem>& ctx, int backward) const;
  StepOut settle_or_bsettle(Mem& self, const StepCtx<Mem>& ctx) const;
  static bool settle_candidate(const Mem& m);
  StepOut settle_here_or_continue(Mem& self, const StepCtx<Mem>& ctx) const;

  StepOut step_line(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_bwalk(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_corner(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut trip_census(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_seek(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_relocate(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_gathered(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_dispatch_walk(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_col_entry(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_settle_col(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_walk_home(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_bsettle(Mem& self, const StepCtx<Mem>& ctx) const;

  ProgramConfig cfg_;
  int log_n_ = 1;
  Round t1_ = 0;
  Round t_reloc_ = 0;
  Round t2_ = 0;
  Round iter_w_ = 0;
};

}  // namespace griddisp
