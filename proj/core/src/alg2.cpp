#include "griddisp/alg2.hpp"

#include <algorithm>

#include "griddisp/constants.hpp"

namespace griddisp {

namespace {

// Window position inside stage 1: hop windows of kHopWindow rounds starting
// right after the round-0 port-1 move. Position 0 is the census round,
// positions 0..kRhop-1 carry probe moves, position kRhop the group move.
inline int stage1_wpos(Round round) { return int((round - 1) % sched::kHopWindow); }

// Force a PortHunt to leave through exactly `port` on its next choice.
inline void force_first_port(PortHunt& hunt, int port) {
  hunt.tried = uint8_t(~(1u << port) & 0x1eu);
}

}  // namespace

Alg2::Alg2(const ProgramConfig& cfg) : cfg_(cfg) {
  t1_ = sched::alg2_t1(cfg.length);
  t_reloc_ = t1_ + sched::alg2_travel_window(cfg.length);
  t2_ = sched::alg2_t2(cfg.length);
}

Round Alg2::budget() const { return sched::alg2_t_end(cfg_.length); }

std::string_view Alg2::phase(const Mem& m) const {
  switch (m.phase) {
    case Phase::Start: return "a2.start";
    case Phase::Line: return "a2.line";
    case Phase::Probe: return "a2.probe";
    case Phase::BWalk: return "a2.bwalk";
    case Phase::Corner: return "a2.corner";
    case Phase::Travel: return "a2.travel";
    case Phase::Relocate: return "a2.relocate";
    case Phase::Gathered: return "a2.gathered";
    case Phase::PairWalk: return "a2.pairwalk";
    case Phase::ColEntry: return "a2.colentry";
    case Phase::CountLine: return "a2.cline";
    case Phase::CountProbe: return "a2.cprobe";
    case Phase::WalkHome: return "a2.home";
    case Phase::Reported: return "a2.reported";
    case Phase::DispatchWalk: return "a2.dwalk";
    case Phase::ColEntry2: return "a2.colentry2";
    case Phase::SettleLine: return "a2.sline";
    case Phase::SettleProbe: return "a2.sprobe";
    case Phase::BSettle: return "a2.bsettle";
    default: return "done";
  }
}

int Alg2::memory_bits(const Mem&) const {
  const int len = cfg_.length;
  const int id_bits = cfg_.id_bits();
  return id_bits                               // id
         + ceil_log2(budget() + 1)             // round counter
         + 5                                   // phase
         + 2 + 2 + 1 + 1                       // backward, straight, flags
         + id_bits                             // group anchor
         + ProbeDfs::kBits                     // probe stack + return set
         + BoundaryWalk::kBits                 // boundary navigation
         + id_bits + 2 + 3 + 4                 // record: min id, offset, corners, flags
         + ceil_log2(4 * len + 1)              // boundary occupancy count
         + ceil_log2(4 * len + 1)              // side hop counter
         + 1 + 2 + 2                           // long-side flag/port, relocation count
         + ceil_log2(len + 1) * 2              // column index, demand
         + 1 + 2                               // trip direction, home port
         + ceil_log2(len + 1);                 // expected pair count
}

bool Alg2::landmark_here(const Mem& self, const StepCtx<Mem>& ctx) const {
  for (const auto& p : ctx.colocated) {
    if (p.id == self.id) continue;
    if (p.id == self.anchor) return true;  // anchor robot, settled or not
    if (p.settled) continue;
    if (p.mem->anchor != self.anchor) continue;
    const Phase ph = p.mem->phase;
    if (ph == Phase::Line || ph == Phase::CountLine || ph == Phase::SettleLine) return true;
  }
  return false;
}

// Runs the scout's probe; on the homeward move (or an early finish at the
// start node) publishes the resolved straight port so group members can act
// on it from the next snapshot.
StepOut Alg2::scout_tick(Mem& self, const StepCtx<Mem>& ctx, Phase line_phase) const {
  const int port = self.dfs.tick(ctx.here.degree, ctx.entry_port, landmark_here(self, ctx));
  if (self.dfs.finished() || self.dfs.homing()) {
    if (self.dfs.r_count() != 2) {
      throw SimulationError("alg2: probe found " + std::to_string(self.dfs.r_count()) +
                            " return paths (crash-free runs always find 2)");
    }
    self.straight = uint8_t(resolve_straight_port(self.backward, self.dfs.r_set()));
    self.probe_ok = 1;
    self.phase = line_phase;
  }
  if (port > 0) return {Decision::move(port)};
  return {};
}

// Straight port published by any group member this hop (self included).
int Alg2::published_straight(const Mem& self, const StepCtx<Mem>& ctx) const {
  for (const auto& p : ctx.colocated) {
    if (p.settled) continue;
    if (p.mem->anchor == self.anchor && p.mem->probe_ok) return p.mem->straight;
  }
  return 0;
}

StepOut Alg2::begin_boundary_walk(Mem& self, const StepCtx<Mem>& ctx, int backward) const {
  if (ctx.here.cls == NodeClass::Corner) {
    self.phase = Phase::Corner;
    return {};
  }
  self.phase = Phase::BWalk;
  self.bw.reset(backward);
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

StepOut Alg2::step(Mem& self, const StepCtx<Mem>& ctx) const {
  self.tick = ctx.round;
  switch (self.phase) {
    case Phase::Start: {
      const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) { return !p.settled; });
      if (g.count == 1) {
        self.phase = Phase::Done;  // alone anywhere at round 0: already dispersed
        return {Decision::settle()};
      }
      if (ctx.here.degree == 4) {
        self.phase = Phase::Line;
        self.anchor = g.min_id;
        self.backward = 0;
        return {Decision::move(1)};
      }
      return begin_boundary_walk(self, ctx, 0);
    }
    case Phase::Line:
      return step_line(self, ctx);
    case Phase::Probe:
      return scout_tick(self, ctx, Phase::Line);
    case Phase::BWalk:
      return step_bwalk(self, ctx);
    case Phase::Corner:
      return step_corner(self, ctx);
    case Phase::Travel:
      return step_travel(self, ctx);
    case Phase::Relocate:
      return step_relocate(self, ctx);
    case Phase::Gathered:
    case Phase::Reported:
      return step_gathered(self, ctx);
    case Phase::PairWalk:
    case Phase::ColEntry:
    case Phase::CountLine:
    case Phase::CountProbe:
    case Phase::WalkHome:
      return step_pair(self, ctx);
    case Phase::DispatchWalk:
      return step_dispatch_walk(self, ctx);
    case Phase::ColEntry2:
      return step_col_entry2(self, ctx);
    case Phase::SettleLine:
    case Phase::SettleProbe:
      return step_settle_col(self, ctx);
    case Phase::BSettle:
      return step_bsettle(self, ctx);
    default:
      return {};
  }
}

StepOut Alg2::step_line(Mem& self, const StepCtx<Mem>& ctx) const {
  if (ctx.here.degree <= 3) return begin_boundary_walk(self, ctx, ctx.entry_port);
  const int wpos = stage1_wpos(ctx.round);
  if (wpos == 0) {
    // Hop census. Co-located journey groups merge, keyed by minimum id; the
    // group continues along the new anchor's heading, so only robots whose
    // anchor survived the merge are eligible to scout this hop (they know
    // the right backward port from their own arrival).
    const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
      return !p.settled && p.mem->phase == Phase::Line;
    });
    StepOut out;
    const bool continuing = self.anchor == g.min_id;
    if (!continuing) {
      out.merged_into = g.min_id;
      self.anchor = g.min_id;
    }
    self.backward = uint8_t(ctx.entry_port);
    self.probe_ok = 0;
    if (g.count == 1) {
      // Unreachable without crashes; settle defensively at a free node.
      if (!settled_peer_here(self.id, ctx)) {
        self.phase = Phase::Done;
        return {Decision::settle()};
      }
      return out;
    }
    RobotId scout = 0;
    for (const auto& p : ctx.colocated) {
      if (p.settled || p.mem->phase != Phase::Line) continue;
      if (p.mem->anchor == g.min_id && p.id > scout && p.id != g.min_id) scout = p.id;
    }
    if (scout == 0) scout = g.max_id;  // lone continuation: anchor scouts? cannot happen
    if (continuing && self.id == scout) {
      self.phase = Phase::Probe;
      self.dfs.arm(self.backward, /*early_exit=*/true);
      out = scout_tick(self, ctx, Phase::Line);
      return out;
    }
    return out;
  }
  if (wpos == sched::kRhop) {
    const int s = published_straight(self, ctx);
    if (s == 0) throw SimulationError("alg2: hop window closed without a probe result");
    self.probe_ok = 0;
    return {Decision::move(s)};
  }
  return {};
}

StepOut Alg2::step_bwalk(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.bw.observe(ctx.here.degree, ctx.entry_port)) {
    if (ctx.here.cls == NodeClass::Corner) {
      self.phase = Phase::Corner;
      return {};
    }
  }
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

namespace {

// Perimeter seats are claimed opportunistically from several phases; the
// smallest co-located claimant wins the round, the rest re-decide later.
bool seat_contender(const Alg2::Mem& m) {
  using Ph = Alg2::Phase;
  return m.phase == Ph::BSettle || m.phase == Ph::Corner || m.phase == Ph::Gathered ||
         m.phase == Ph::Reported;
}

bool smaller_contender_here(RobotId self, const StepCtx<Alg2::Mem>& ctx) {
  for (const auto& p : ctx.colocated) {
    if (!p.settled && p.id < self && seat_contender(*p.mem)) return true;
  }
  return false;
}

}  // namespace

StepOut Alg2::step_corner(Mem& self, const StepCtx<Mem>& ctx) const {
  if (ctx.round == t1_) {
    const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
      return !p.settled && p.mem->phase == Phase::Corner;
    });
    if (g.count == 1) {
      if (!settled_peer_here(self.id, ctx) && !smaller_contender_here(self.id, ctx)) {
        self.phase = Phase::Done;  // lone corner robot stays settled
        return {Decision::settle()};
      }
      if (!settled_peer_here(self.id, ctx)) return {};  // contested seat; retry
      // Corner seat already taken by a settled singleton: settle greedily
      // along the perimeter instead of joining the gathering.
      self.phase = Phase::BSettle;
      self.bw.reset(0);
      return {Decision::move(self.bw.choose(ctx.here.degree))};
    }
    self.rec_min = g.min_id;
    self.rec_off = 0;
    self.occ_flags = uint8_t(settled_peer_here(self.id, ctx) ? 1 : 0);
    self.bocc = 0;
    if (self.id == g.max_id) {
      self.phase = Phase::Travel;
      self.trav_corners = 0;
      self.side_hops = 0;
      self.first_long = 0;
      self.bw.reset(0);
      return {Decision::move(self.bw.choose(ctx.here.degree))};
    }
    return {};
  }
  if (ctx.round == t_reloc_) {
    // Adopt the home traveler's record and head for the minimum-id corner.
    const Mem* traveler = nullptr;
    for (const auto& p : ctx.colocated) {
      if (p.settled) continue;
      if (p.mem->phase == Phase::Corner && p.mem->trav_corners == 4) traveler = p.mem;
    }
    if (traveler == nullptr) return {};
    self.rec_min = traveler->rec_min;
    self.rec_off = traveler->rec_off;
    self.occ_flags = traveler->occ_flags;
    self.bocc = traveler->bocc;
    self.first_long = traveler->first_long;
    self.trav_corners = traveler->trav_corners;
    if (self.rec_off == 0) {
      self.phase = Phase::Gathered;
      self.long_port = self.first_long ? 1 : 2;
      return {};
    }
    self.phase = Phase::Relocate;
    self.reloc_left = uint8_t(self.rec_off <= 2 ? self.rec_off : 1);
    self.side_hops = 0;
    self.bw.reset(0);
    if (self.rec_off == 3) force_first_port(self.bw.hunt, 2);  // one side backward
    return {Decision::move(self.bw.choose(ctx.here.degree))};
  }
  return {};
}

StepOut Alg2::step_travel(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.bw.observe(ctx.here.degree, ctx.entry_port)) {
    ++self.side_hops;
    if (ctx.here.cls == NodeClass::Corner) {
      ++self.trav_corners;
      if (self.trav_corners == 1) {
        self.first_long = uint8_t(self.side_hops == uint16_t(cfg_.length - 1));
      }
      self.side_hops = 0;
      if (self.trav_corners >= 4) {
        self.phase = Phase::Corner;  // home, record complete
        return {};
      }
      const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
        return !p.settled && p.mem->phase == Phase::Corner;
      });
      if (g.count > 0 && g.min_id < self.rec_min) {
        self.rec_min = g.min_id;
        self.rec_off = self.trav_corners;
      }
      if (settled_peer_here(self.id, ctx)) {
        self.occ_flags |= uint8_t(1u << self.trav_corners);
      }
    } else if (settled_peer_here(self.id, ctx)) {
      ++self.bocc;
    }
  }
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

StepOut Alg2::step_relocate(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.bw.observe(ctx.here.degree, ctx.entry_port)) {
    ++self.side_hops;
    if (ctx.here.cls == NodeClass::Corner) {
      if (--self.reloc_left == 0) {
        self.phase = Phase::Gathered;
        const bool last_long = self.side_hops == uint16_t(cfg_.length - 1);
        self.long_port = uint8_t(last_long ? ctx.entry_port : (ctx.entry_port == 1 ? 2 : 1));
        return {};
      }
      self.side_hops = 0;
    }
  }
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

StepOut Alg2::step_gathered(Mem& self, const StepCtx<Mem>& ctx) const {
  const int len = cfg_.length;
  const auto dispatchable = [](const Peer<Mem>& p) {
    return !p.settled && (p.mem->phase == Phase::Gathered || p.mem->phase == Phase::Reported);
  };

  if (ctx.round == t2_) {
    // Canonical occupancy record: the gather corner's own traveler (minimum
    // corner, so its record has offset 0). Everyone adopts it so that all
    // later seat arithmetic agrees.
    const Mem* home = nullptr;
    for (const auto& p : ctx.colocated) {
      if (p.settled) continue;
      if (p.mem->trav_corners == 4 && p.mem->rec_off == 0) home = p.mem;
    }
    if (home != nullptr) {
      self.occ_flags = home->occ_flags;
      self.bocc = home->bocc;
      self.long_port = home->first_long ? 1 : 2;
    }
    int occupied = self.bocc;
    for (int i = 0; i < 4; ++i) occupied += (self.occ_flags >> i) & 1;
    const int free_perimeter = 2 * (cfg_.length + cfg_.width) - 4 - occupied;

    const auto g = scan_group<Mem>(self.id, ctx, dispatchable);
    if (g.count <= free_perimeter) {
      self.phase = Phase::BSettle;
      self.bw.reset(0);
      if (g.rank == 0 && !settled_peer_here(self.id, ctx) &&
          !smaller_contender_here(self.id, ctx)) {
        self.phase = Phase::Done;
        return {Decision::settle()};
      }
      return {Decision::move(self.bw.choose(ctx.here.degree))};
    }
    // Send pairs to measure column demand; the rest wait for the reports.
    const int npairs = std::min(len - 2, g.count / 2);
    self.pairs_expected = uint16_t(npairs);
    if (g.rank < 2 * npairs) {
      self.col = uint16_t(g.rank / 2 + 1);
      self.phase = Phase::PairWalk;
      self.bw.reset(0);
      force_first_port(self.bw.hunt, self.long_port);
      return {Decision::move(self.bw.choose(ctx.here.degree))};
    }
    return {};
  }

  if (ctx.round > t2_ && self.pairs_expected > 0) {
    // Dispatch as soon as every pair has reported; counts and demands are
    // read fresh from the snapshot (a pair is counted via its lower id).
    int reported = 0;
    for (const auto& p : ctx.colocated) {
      if (p.settled) continue;
      if (p.mem->phase == Phase::Reported && p.mem->anchor == p.id) ++reported;
    }
    if (reported < int(self.pairs_expected)) return {};

    const auto g = scan_group<Mem>(self.id, ctx, dispatchable);
    int cum = 0;
    int my_col = 0;
    for (int c = 1; c <= len - 2 && my_col == 0; ++c) {
      int dem = 0;
      for (const auto& p : ctx.colocated) {
        if (p.settled) continue;
        if (p.mem->phase == Phase::Reported && int(p.mem->col) == c) dem = int(p.mem->demand);
      }
      if (dem <= 0) continue;
      if (g.rank < cum + dem) my_col = c;
      cum += dem;
    }
    if (my_col > 0) {
      self.col = uint16_t(my_col);
      self.phase = Phase::DispatchWalk;
      self.bw.reset(0);
      force_first_port(self.bw.hunt, self.long_port);
      return {Decision::move(self.bw.choose(ctx.here.degree))};
    }
    // Perimeter crew; its lowest rank takes the gather corner itself.
    self.phase = Phase::BSettle;
    self.bw.reset(0);
    if (g.rank == cum && !settled_peer_here(self.id, ctx) &&
        !smaller_contender_here(self.id, ctx)) {
      self.phase = Phase::Done;
      return {Decision::settle()};
    }
    return {Decision::move(self.bw.choose(ctx.here.degree))};
  }
  return {};
}

// Shared by the counting pair and the settle groups: arrival bookkeeping for
// one committed column hop, then the next probe launch.
StepOut Alg2::column_hop_start(Mem& self, const StepCtx<Mem>& ctx, Phase line_phase,
                               Phase probe_phase) const {
  const auto g = scan_group<Mem>(self.id, ctx, [&](const Peer<Mem>& p) {
    return !p.settled && p.mem->anchor == self.anchor &&
           (p.mem->phase == line_phase || p.mem->phase == probe_phase);
  });
  if (g.count == 1) {
    // Alone: a settled occupant serves as the landmark for one more hop.
    RobotId occupant = 0;
    if (!settled_peer_here(self.id, ctx, &occupant)) {
      self.phase = Phase::Done;
      return {Decision::settle()};
    }
    self.anchor = occupant;
    self.phase = probe_phase;
    self.dfs.arm(self.backward, true);
    return scout_tick(self, ctx, line_phase);
  }
  if (self.id == g.max_id) {
    self.phase = probe_phase;
    self.dfs.arm(self.backward, true);
    return scout_tick(self, ctx, line_phase);
  }
  return {};
}

StepOut Alg2::step_pair(Mem& self, const StepCtx<Mem>& ctx) const {
  switch (self.phase) {
    case Phase::PairWalk: {
      if (self.bw.observe(ctx.here.degree, ctx.entry_port)) {
        if (self.bw.hops == self.col) {
          self.home_port = uint8_t(self.bw.hunt.backward);
          self.phase = Phase::ColEntry;
          self.bw.hunt.start(self.home_port, /*internal=*/true);
          return {Decision::move(self.bw.hunt.choose(ctx.here.degree))};
        }
      }
      return {Decision::move(self.bw.choose(ctx.here.degree))};
    }
    case Phase::ColEntry: {
      if (self.bw.hunt.observe(ctx.here.degree, ctx.entry_port)) {
        // First column node: start the down trip. Peer anchors are stale on
        // this round, so the census keys on the column index.
        self.going_down = 1;
        self.demand = uint16_t(settled_peer_here(self.id, ctx) ? 0 : 1);
        self.backward = uint8_t(self.bw.hunt.backward);
        const auto g = scan_group<Mem>(self.id, ctx, [&](const Peer<Mem>& p) {
          return !p.settled && p.mem->col == self.col &&
                 (p.mem->phase == Phase::ColEntry || p.mem->phase == Phase::CountLine);
        });
        self.anchor = g.min_id;
        self.phase = Phase::CountLine;
        self.probe_ok = 0;
        self.hop_pending = 0;
        if (self.id == g.max_id && g.count >= 2) {
          self.phase = Phase::CountProbe;
          self.dfs.arm(self.backward, true);
          return scout_tick(self, ctx, Phase::CountLine);
        }
        return {};
      }
      return {Decision::move(self.bw.hunt.choose(ctx.here.degree))};
    }
    case Phase::CountProbe:
      return scout_tick(self, ctx, Phase::CountLine);
    case Phase::CountLine: {
      if (self.hop_pending) {
        self.hop_pending = 0;
        if (ctx.here.degree <= 3) {
          if (self.going_down) {
            // Far end: turn around and climb back up the same column.
            self.going_down = 0;
            self.hop_pending = 1;
            return {Decision::move(ctx.entry_port)};
          }
          // Back at the top boundary node: walk home along the side.
          self.phase = Phase::WalkHome;
          self.bw.reset(0);
          force_first_port(self.bw.hunt, self.home_port);
          return {Decision::move(self.bw.choose(ctx.here.degree))};
        }
        if (self.going_down && !settled_peer_here(self.id, ctx)) ++self.demand;
        self.backward = uint8_t(ctx.entry_port);
        return column_hop_start(self, ctx, Phase::CountLine, Phase::CountProbe);
      }
      if (self.probe_ok) {
        self.probe_ok = 0;
        self.hop_pending = 1;
        return {Decision::move(self.straight)};
      }
      if (const int s = published_straight(self, ctx); s != 0) {
        self.hop_pending = 1;
        return {Decision::move(s)};
      }
      return {};
    }
    case Phase::WalkHome: {
      if (self.bw.observe(ctx.here.degree, ctx.entry_port)) {
        if (ctx.here.cls == NodeClass::Corner) {
          self.phase = Phase::Reported;
          return {};
        }
      }
      return {Decision::move(self.bw.choose(ctx.here.degree))};
    }
    default:
      return {};
  }
}

StepOut Alg2::step_dispatch_walk(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.bw.observe(ctx.here.degree, ctx.entry_port)) {
    if (self.bw.hops == self.col) {
      self.home_port = uint8_t(self.bw.hunt.backward);
      self.phase = Phase::ColEntry2;
      self.bw.hunt.start(self.home_port, /*internal=*/true);
      return {Decision::move(self.bw.hunt.choose(ctx.here.degree))};
    }
  }
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

// Settle candidates: robots standing in this column's greedy descent, plus
// a cohort committing into the column this round (snapshot still shows the
// entry hunt). Mid-probe wanderers from other groups are deliberately not
// candidates: a probing scout can stand on a foreign node, but it is never
// in a standing phase there, so excluding probe phases keeps censuses local
// to the robots that actually hold the node.
bool Alg2::settle_candidate(const Mem& m) {
  return m.phase == Phase::SettleLine || m.phase == Phase::ColEntry2;
}

StepOut Alg2::settle_here_or_continue(Mem& self, const StepCtx<Mem>& ctx) const {
  const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
    return !p.settled && settle_candidate(*p.mem);
  });
  const bool empty = !settled_peer_here(self.id, ctx);
  if (empty && g.rank == 0) {
    self.phase = Phase::Done;
    return {Decision::settle()};
  }
  // The settler (fresh or pre-settled) is the stationary landmark; movers
  // are everyone else, highest id scouts.
  self.phase = Phase::SettleLine;
  RobotId landmark = 0;
  if (empty) {
    landmark = g.min_id;
  } else {
    settled_peer_here(self.id, ctx, &landmark);
  }
  self.anchor = landmark;
  const bool im_scout = self.id == g.max_id;
  if (im_scout) {
    self.phase = Phase::SettleProbe;
    self.dfs.arm(self.backward, true);
    return scout_tick(self, ctx, Phase::SettleLine);
  }
  return {};
}

StepOut Alg2::step_settle_col(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.phase == Phase::SettleProbe) return scout_tick(self, ctx, Phase::SettleLine);
  if (self.hop_pending) {
    self.hop_pending = 0;
    if (ctx.here.degree <= 3) {
      // Off the column with no seat found: fall back to greedy perimeter
      // settling from here.
      self.phase = Phase::BSettle;
      self.bw.reset(ctx.entry_port);
      return step_bsettle(self, ctx);
    }
    self.backward = uint8_t(ctx.entry_port);
    return settle_here_or_continue(self, ctx);
  }
  if (self.probe_ok) {
    self.probe_ok = 0;
    self.hop_pending = 1;
    return {Decision::move(self.straight)};
  }
  if (const int s = published_straight(self, ctx); s != 0) {
    self.hop_pending = 1;
    return {Decision::move(s)};
  }
  return {};
}

StepOut Alg2::step_col_entry2(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.bw.hunt.observe(ctx.here.degree, ctx.entry_port)) {
    self.backward = uint8_t(self.bw.hunt.backward);
    self.probe_ok = 0;
    self.hop_pending = 0;
    return settle_here_or_continue(self, ctx);
  }
  return {Decision::move(self.bw.hunt.choose(ctx.here.degree))};
}

StepOut Alg2::step_bsettle(Mem& self, const StepCtx<Mem>& ctx) const {
  const bool committed = self.bw.observe(ctx.here.degree, ctx.entry_port);
  const bool standing = self.bw.hunt.mode == PortHunt::Mode::AtNode;
  if (standing && (committed || self.bw.hops == 0)) {
    if (self.bw.corners >= 5 && ctx.here.cls == NodeClass::Boundary) {
      // Full loop without a free perimeter seat: take the interior port and
      // settle greedily down this column instead.
      self.phase = Phase::ColEntry2;
      self.bw.hunt.start(self.bw.hunt.backward, /*internal=*/true);
      return {Decision::move(self.bw.hunt.choose(ctx.here.degree))};
    }
    const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
      return !p.settled && p.mem->phase == Phase::BSettle;
    });
    if (!settled_peer_here(self.id, ctx) && g.rank == 0 &&
        !smaller_contender_here(self.id, ctx)) {
      self.phase = Phase::Done;
      return {Decision::settle()};
    }
  }
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

}  // namespace griddisp
