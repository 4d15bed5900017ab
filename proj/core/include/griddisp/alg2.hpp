#pragma once

#include <cstdint>
#include <string_view>

#include "griddisp/engine.hpp"
#include "griddisp/kernels.hpp"
#include "griddisp/protocol_common.hpp"

namespace griddisp {

// Non-faulty dispersion on unoriented grids, three stages on a fixed global
// schedule (robots know n and the side lengths, so every stage boundary is
// common knowledge):
//   Stage 1 [0, T1): singletons settle where they stand; internal groups
//     move straight via probe hops to the boundary, then walk to a corner.
//   Stage 2 [T1, T2): each corner group sends its highest id around the
//     boundary to find the minimum-id corner; groups relocate there.
//   Stage 3 [T2, ..): if the gathered group fits on the free perimeter it
//     settles greedily along the boundary; otherwise pairs measure each
//     column's demand, report home, and the corner dispatches exactly the
//     measured numbers (lowest ids to nearest columns) plus a perimeter
//     crew.
class Alg2 {
 public:
  enum class Phase : uint8_t {
    Start,
    Line,        // straight-line journey, standing at a hop node
    Probe,       // scout running the return-path enumeration
    BWalk,       // boundary walk toward a corner
    Corner,      // waiting at a corner
    Travel,      // stage-2 loop around the boundary
    Relocate,    // walking to the minimum-id corner
    Gathered,    // at the gather corner
    PairWalk,    // pair caravan heading to its column top
    ColEntry,    // pair hunting the interior port at its column top
    CountLine,   // pair inside the column (line position)
    CountProbe,  // pair scout probing inside the column
    WalkHome,    // pair returning to the corner along the boundary
    Reported,    // pair home with its demand count
    DispatchWalk,
    ColEntry2,   // settle group entering its column
    SettleLine,
    SettleProbe,
    BSettle,     // greedy perimeter settling
    Done,
  };

  struct Mem {
    RobotId id = 0;
    Round tick = 0;
    Phase phase = Phase::Start;
    // Straight-line journey state.
    uint8_t backward = 0;
    uint8_t straight = 0;
    uint8_t probe_ok = 0;
    uint8_t hop_pending = 0;
    RobotId anchor = 0;
    ProbeDfs dfs{};
    BoundaryWalk bw{};
    // Stage-2 traveler record.
    RobotId rec_min = 0;
    uint8_t rec_off = 0;
    uint8_t trav_corners = 0;
    uint8_t occ_flags = 0;
    uint16_t bocc = 0;
    uint16_t side_hops = 0;
    uint8_t first_long = 0;
    uint8_t reloc_left = 0;
    uint8_t long_port = 0;
    // Stage-3 column work.
    uint16_t col = 0;
    uint16_t demand = 0;
    uint8_t going_down = 0;
    uint8_t home_port = 0;
    uint16_t pairs_expected = 0;
  };

  explicit Alg2(const ProgramConfig& cfg);

  Mem init(RobotId id) const {
    Mem m;
    m.id = id;
    m.anchor = id;
    return m;
  }
  StepOut step(Mem& self, const StepCtx<Mem>& ctx) const;
  int memory_bits(const Mem&) const;
  std::string_view phase(const Mem& m) const;
  long retries(const Mem&) const { return 0; }
  std::string_view name() const { return "alg2"; }

  Round t1() const { return t1_; }
  Round t2() const { return t2_; }
  Round budget() const;

 private:
  static bool settle_candidate(const Mem& m);
  bool landmark_here(const Mem& self, const StepCtx<Mem>& ctx) const;
  int published_straight(const Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut scout_tick(Mem& self, const StepCtx<Mem>& ctx, Phase line_phase) const;
  StepOut begin_boundary_walk(Mem& self, const StepCtx<Mem>& ctx, int backward) const;
  StepOut column_hop_start(Mem& self, const StepCtx<Mem>& ctx, Phase line_phase,
                           Phase probe_phase) const;
  StepOut settle_here_or_continue(Mem& self, const StepCtx<Mem>& ctx) const;

  StepOut step_line(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_bwalk(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_corner(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_travel(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_relocate(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_gathered(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_pair(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_dispatch_walk(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_col_entry2(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_settle_col(Mem& self, const StepCtx<Mem>& ctx) const;
  StepOut step_bsettle(Mem& self, const StepCtx<Mem>& ctx) const;

  ProgramConfig cfg_;
  Round t1_ = 0;
  Round t_reloc_ = 0;
  Round t2_ = 0;
};

}  // namespace griddisp
