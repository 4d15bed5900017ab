#include "griddisp/alg3.hpp"

#include <algorithm>

#include "griddisp/constants.hpp"

namespace griddisp {

namespace {

inline int stage1_wpos(Round round) { return int((round - 1) % sched::kHopWindow); }

inline void force_first_port(PortHunt& hunt, int port) {
  hunt.tried = uint8_t(~(1u << port) & 0x1eu);
}

}  // namespace

Alg3::Alg3(const ProgramConfig& cfg) : cfg_(cfg) {
  if (cfg.length > 60) throw ConfigError("alg3: grids longer than 60 are not supported");
  log_n_ = cfg.log_n();
  t1_ = sched::alg3_t1(cfg.length, log_n_);
  t_reloc_ = t1_ + sched::alg3_trip_window(cfg.length) * log_n_;
  t2_ = sched::alg3_t2(cfg.length, log_n_);
  iter_w_ = sched::alg3_iter_window(cfg.length, log_n_);
}

Round Alg3::budget() const { return sched::alg3_t_end(cfg_.length, log_n_); }

std::string_view Alg3::phase(const Mem& m) const {
  switch (m.phase) {
    case Phase::Start: return "a3.start";
    case Phase::Line: return "a3.line";
    case Phase::Probe: return "a3.probe";
    case Phase::BWalk: return "a3.bwalk";
    case Phase::Corner: return "a3.corner";
    case Phase::Seek: return "a3.seek";
    case Phase::Relocate: return "a3.relocate";
    case Phase::Gathered: return "a3.gathered";
    case Phase::DispatchWalk: return "a3.dwalk";
    case Phase::ColEntry: return "a3.colentry";
    case Phase::SettleLine: return "a3.sline";
    case Phase::SettleScout: return "a3.sscout";
    case Phase::WalkHome: return "a3.home";
    case Phase::BSettle: return "a3.bsettle";
    default: return "done";
  }
}

// Declared widths are summed per live field group: a robot never runs a
// probe and a boundary walk at once, and the replicated column table only
// exists from the gathering on. This is what keeps the peak under the
// 8*len*ceil(log2 n) ceiling while the table alone accounts for
// 2*len*ceil(log2 len) bits.
int Alg3::memory_bits(const Mem& m) const {
  const int len = cfg_.length;
  const int id_bits = cfg_.id_bits();
  int bits = id_bits                      // id
             + ceil_log2(budget() + 1)    // round counter
             + 4                          // phase
             + ceil_log2(log_n_ + 2)      // retry counter
             + id_bits + 2;               // anchor, long-side port
  switch (m.phase) {
    case Phase::Line:
    case Phase::Probe:
    case Phase::SettleLine:
    case Phase::SettleScout:
    case Phase::ColEntry:
      bits += 2 + 2 + 3 + 7 + ProbeDfs::kBits;  // backward/straight/flags/hop timer/probe
      break;
    case Phase::BWalk:
    case Phase::Relocate:
    case Phase::DispatchWalk:
    case Phase::WalkHome:
    case Phase::BSettle:
      bits += BoundaryWalk::kBits + ceil_log2(4 * len + 1);
      break;
    case Phase::Corner:
    case Phase::Seek:
      bits += BoundaryWalk::kBits + ceil_log2(4 * len + 1)  // loop navigation
              + id_bits + 2 + 3 + 2 + 1                      // seeker record
              + id_bits + 2                                  // non-seeker accumulator
              + 1 + 2 + 2 + 1;                               // commit state
      break;
    default:
      break;
  }
  if (m.phase == Phase::Gathered || m.phase == Phase::DispatchWalk ||
      m.phase == Phase::ColEntry || m.phase == Phase::SettleLine ||
      m.phase == Phase::SettleScout || m.phase == Phase::WalkHome) {
    bits += 2 * len * ceil_log2(len)        // column table: position + demand
            + ceil_log2(len + 1) * 2;       // own column, report flag
  }
  return bits;
}

bool Alg3::landmark_here(const Mem& self, const StepCtx<Mem>& ctx) const {
  for (const auto& p : ctx.colocated) {
    if (p.id == self.id) continue;
    if (p.id == self.anchor) return true;
    if (p.settled) continue;
    if (p.mem->anchor != self.anchor) continue;
    const Phase ph = p.mem->phase;
    if (ph == Phase::Line || ph == Phase::SettleLine) return true;
  }
  return false;
}

int Alg3::published_straight(const Mem& self, const StepCtx<Mem>& ctx) const {
  for (const auto& p : ctx.colocated) {
    if (p.settled) continue;
    if (p.mem->anchor == self.anchor && p.mem->probe_ok) return p.mem->straight;
  }
  return 0;
}

StepOut Alg3::scout_tick(Mem& self, const StepCtx<Mem>& ctx, Phase line_phase) const {
  const int port = self.dfs.tick(ctx.here.degree, ctx.entry_port, landmark_here(self, ctx));
  if (self.dfs.finished() || self.dfs.homing()) {
    if (self.dfs.r_count() == 2) {
      self.straight = uint8_t(resolve_straight_port(self.backward, self.dfs.r_set()));
      self.probe_ok = 1;
    }
    // On a failed probe the scout simply rejoins the group; the hop window
    // times out and the survivors re-partition.
    self.phase = line_phase;
  }
  if (port > 0) return {Decision::move(port)};
  return {};
}

StepOut Alg3::begin_boundary_walk(Mem& self, const StepCtx<Mem>& ctx, int backward) const {
  if (ctx.here.cls == NodeClass::Corner) {
    self.phase = Phase::Corner;
    return {};
  }
  self.phase = Phase::BWalk;
  self.bw.reset(backward);
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

namespace {

// Perimeter seats can be claimed by robots in several phases at once; only
// the smallest co-located claimant may settle in any round, everyone else
// holds off and re-decides next round.
bool seat_contender(const Alg3::Mem& m) {
  using Ph = Alg3::Phase;
  return m.phase == Ph::BSettle || m.phase == Ph::Corner || m.phase == Ph::Gathered ||
         (m.phase == Ph::Seek && m.trav_corners >= 4);
}

bool smaller_contender_here(RobotId self, const StepCtx<Alg3::Mem>& ctx) {
  for (const auto& p : ctx.colocated) {
    if (!p.settled && p.id < self && seat_contender(*p.mem)) return true;
  }
  return false;
}

}  // namespace

// Lone robot at a corner: keep the seat if it is free, otherwise settle
// greedily along the perimeter.
StepOut Alg3::settle_or_bsettle(Mem& self, const StepCtx<Mem>& ctx) const {
  if (!settled_peer_here(self.id, ctx)) {
    if (smaller_contender_here(self.id, ctx)) return {};
    self.phase = Phase::Done;
    return {Decision::settle()};
  }
  self.phase = Phase::BSettle;
  self.bw.reset(0);
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

StepOut Alg3::step(Mem& self, const StepCtx<Mem>& ctx) const {
  self.tick = ctx.round;
  switch (self.phase) {
    case Phase::Start: {
      const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) { return !p.settled; });
      if (g.count == 1) {
        self.phase = Phase::Done;
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
    case Phase::Seek:
      // Returned seekers take part in the trip censuses like any other
      // corner resident.
      return self.trav_corners >= 4 ? step_corner(self, ctx) : step_seek(self, ctx);
    case Phase::Relocate:
      return step_relocate(self, ctx);
    case Phase::Gathered:
      return step_gathered(self, ctx);
    case Phase::DispatchWalk:
      return step_dispatch_walk(self, ctx);
    case Phase::ColEntry:
      return step_col_entry(self, ctx);
    case Phase::SettleLine:
      return step_settle_col(self, ctx);
    case Phase::SettleScout:
      return scout_tick(self, ctx, Phase::SettleLine);
    case Phase::WalkHome:
      return step_walk_home(self, ctx);
    case Phase::BSettle:
      return step_bsettle(self, ctx);
    default:
      return {};
  }
}

StepOut Alg3::step_line(Mem& self, const StepCtx<Mem>& ctx) const {
  if (ctx.here.degree <= 3) return begin_boundary_walk(self, ctx, ctx.entry_port);
  const int wpos = stage1_wpos(ctx.round);
  if (wpos == 0) {
    const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
      return !p.settled && p.mem->phase == Phase::Line;
    });
    StepOut out;
    self.probe_ok = 0;
    // Merge handling: a window with mixed anchors is spent re-syncing so
    // that on the next window everyone can read the new anchor's heading
    // from its published state.
    bool mixed = false;
    bool any_resync = false;
    for (const auto& p : ctx.colocated) {
      if (p.settled || p.mem->phase != Phase::Line) continue;
      if (p.mem->anchor != g.min_id) mixed = true;
      if (p.mem->resynced) any_resync = true;
    }
    if (mixed) {
      if (self.anchor != g.min_id) {
        out.merged_into = g.min_id;
        self.anchor = g.min_id;
      }
      self.backward = uint8_t(ctx.entry_port);
      self.resynced = 1;
      return out;
    }
    if (any_resync) {
      for (const auto& p : ctx.colocated) {
        if (!p.settled && p.mem->phase == Phase::Line && p.id == g.min_id) {
          self.backward = p.mem->backward;
        }
      }
      self.resynced = 0;
    } else {
      self.backward = uint8_t(ctx.entry_port);
    }
    if (g.count == 1) {
      // Lone survivor: settle at a free node, or use the settled occupant
      // as a landmark for one more straight hop.
      RobotId occupant = 0;
      if (!settled_peer_here(self.id, ctx, &occupant)) {
        self.phase = Phase::Done;
        return {Decision::settle()};
      }
      self.anchor = occupant;
      self.phase = Phase::Probe;
      self.dfs.arm(self.backward, true);
      return scout_tick(self, ctx, Phase::Line);
    }
    const int scouts = (g.count + 1) / 2;
    if (g.rank >= g.count - scouts) {
      self.phase = Phase::Probe;
      self.dfs.arm(self.backward, true);
      return scout_tick(self, ctx, Phase::Line);
    }
    return out;
  }
  if (wpos == sched::kRhop) {
    const int s = published_straight(self, ctx);
    if (s != 0) {
      self.probe_ok = 0;
      return {Decision::move(s)};
    }
    ++self.retry_count;  // failed window; survivors re-partition next window
    return {};
  }
  return {};
}

StepOut Alg3::step_bwalk(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.bw.observe(ctx.here.degree, ctx.entry_port)) {
    if (ctx.here.cls == NodeClass::Corner) {
      self.phase = Phase::Corner;
      return {};
    }
  }
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

StepOut Alg3::step_corner(Mem& self, const StepCtx<Mem>& ctx) const {
  const Round trip_len = sched::alg3_trip_window(cfg_.length);

  // Passive accumulation: watch passing seekers and fold their sightings
  // into the non-seeker record, normalized to "d corners from here along
  // our port-1 side".
  if (self.phase == Phase::Corner && ctx.round > t1_ && ctx.round < t_reloc_ &&
      !self.committed) {
    for (const auto& p : ctx.colocated) {
      if (p.settled || p.mem->phase != Phase::Seek || !p.mem->at_corner) continue;
      if (p.mem->rec_min == 0 || (self.nrec_min != 0 && p.mem->rec_min >= self.nrec_min)) continue;
      const int behind = (int(p.mem->trav_corners) - int(p.mem->rec_off)) & 3;
      const int d = p.mem->entered_port == 1 ? behind : (4 - behind) & 3;
      self.nrec_min = p.mem->rec_min;
      self.nrec_d = uint8_t(d);
    }
  }

  if (ctx.round >= t1_ && ctx.round < t_reloc_ && (ctx.round - t1_) % trip_len == 0) {
    return trip_census(self, ctx);
  }
  if (ctx.round == t_reloc_) {
    if (!self.committed) {
      const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
        return !p.settled &&
               (p.mem->phase == Phase::Corner ||
                (p.mem->phase == Phase::Seek && p.mem->trav_corners >= 4));
      });
      if (g.count == 1) return settle_or_bsettle(self, ctx);
      // Out of trips without agreement: disperse greedily rather than wait.
      self.phase = Phase::BSettle;
      self.bw.reset(0);
      return {Decision::move(self.bw.choose(ctx.here.degree))};
    }
    if (self.target_d == 0) {
      self.phase = Phase::Gathered;
      return {};
    }
    self.phase = Phase::Relocate;
    self.reloc_left = uint8_t(self.target_d <= 2 ? self.target_d : 1);
    self.side_hops = 0;
    self.bw.reset(0);
    if (self.target_d == 3) force_first_port(self.bw.hunt, 2);
    return {Decision::move(self.bw.choose(ctx.here.degree))};
  }
  if (ctx.round == t2_) {
    // Straggler sweep: anyone still in Corner joins the gathering if it is
    // standing at the gather corner, otherwise settles greedily.
    bool gathered_here = false;
    for (const auto& p : ctx.colocated) {
      if (!p.settled && p.mem->phase == Phase::Gathered) gathered_here = true;
    }
    if (gathered_here) {
      self.phase = Phase::Gathered;
      return {};
    }
    return settle_or_bsettle(self, ctx);
  }
  return {};
}

// Census at a trip boundary: evaluate the previous trip's agreement, then
// either commit or send a fresh seeker half.
StepOut Alg3::trip_census(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.committed) return {};
  const auto member = [](const Peer<Mem>& p) {
    return !p.settled &&
           (p.mem->phase == Phase::Corner ||
            (p.mem->phase == Phase::Seek && p.mem->trav_corners >= 4));
  };
  const auto g = scan_group<Mem>(self.id, ctx, member);

  // Agreement: a returned seeker and a stationary non-seeker naming the
  // same (minimum id, offset).
  RobotId commit_min = 0;
  uint8_t commit_d = 0;
  bool commit = false;
  for (const auto& s : ctx.colocated) {
    if (s.settled || s.mem->phase != Phase::Seek || s.mem->trav_corners < 4) continue;
    if (s.mem->rec_min == 0) continue;
    for (const auto& ns : ctx.colocated) {
      if (ns.settled || ns.mem->phase != Phase::Corner) continue;
      if (ns.mem->nrec_min == s.mem->rec_min && ns.mem->nrec_d == (s.mem->rec_off & 3)) {
        commit = true;
        commit_min = s.mem->rec_min;
        commit_d = uint8_t(s.mem->rec_off & 3);
      }
    }
  }
  if (commit) {
    self.committed = 1;
    self.target_d = commit_d;
    self.rec_min = commit_min;
    self.phase = Phase::Corner;
    return {};
  }

  if (g.count == 1) return settle_or_bsettle(self, ctx);

  // Fresh trip: re-derive the local minimum, send the higher-id half.
  if (ctx.round > t1_) ++self.retry_count;
  self.phase = Phase::Corner;
  self.nrec_min = g.min_id;
  self.nrec_d = 0;
  const int seekers = (g.count + 1) / 2;
  if (g.rank >= g.count - seekers) {
    self.phase = Phase::Seek;
    self.rec_min = g.min_id;
    self.rec_off = 0;
    self.trav_corners = 0;
    self.side_hops = 0;
    self.at_corner = 0;
    self.first_long = 0;
    self.bw.reset(0);
    return {Decision::move(self.bw.choose(ctx.here.degree))};
  }
  return {};
}

StepOut Alg3::step_seek(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.trav_corners >= 4) return {};  // home; wait for the trip census
  if (self.bw.observe(ctx.here.degree, ctx.entry_port)) {
    ++self.side_hops;
    if (ctx.here.cls == NodeClass::Corner) {
      ++self.trav_corners;
      self.at_corner = 1;
      self.entered_port = uint8_t(ctx.entry_port);
      if (self.trav_corners == 1) {
        self.first_long = uint8_t(self.side_hops == uint16_t(cfg_.length - 1));
        if (self.first_long) self.long_port = 1;  // port-1 side is the long one
      }
      self.side_hops = 0;
      if (self.trav_corners >= 4) {
        if (!self.first_long) self.long_port = 2;
        return {};
      }
      const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
        return !p.settled && p.mem->phase == Phase::Corner;
      });
      if (g.count > 0 && g.min_id < self.rec_min) {
        self.rec_min = g.min_id;
        self.rec_off = self.trav_corners;
      }
    } else {
      self.at_corner = 0;
    }
  }
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

StepOut Alg3::step_relocate(Mem& self, const StepCtx<Mem>& ctx) const {
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

StepOut Alg3::step_gathered(Mem& self, const StepCtx<Mem>& ctx) const {
  if (ctx.round < t2_) return {};
  const Round since = ctx.round - t2_;
  if (since % iter_w_ != 0) return {};
  const long iter = long(since / iter_w_);

  // Fold reports from this snapshot into the replicated table, then clear
  // the own report flag.
  for (const auto& p : ctx.colocated) {
    if (p.settled || p.mem->phase != Phase::Gathered) continue;
    if (p.mem->saturated_col != 0) self.sat_mask |= uint64_t(1) << p.mem->saturated_col;
  }
  self.saturated_col = 0;

  const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
    return !p.settled && p.mem->phase == Phase::Gathered;
  });

  // Agree on the dispatch side: every robot adopts the value held by the
  // lowest id that knows one, so all cohorts walk the same side and the
  // column table indexes one consistent set of lines.
  {
    RobotId holder = 0;
    uint8_t port = 1;
    for (const auto& p : ctx.colocated) {
      if (p.settled || p.mem->phase != Phase::Gathered || p.mem->long_port == 0) continue;
      if (holder == 0 || p.id < holder) {
        holder = p.id;
        port = p.mem->long_port;
      }
    }
    self.long_port = port;
  }

  int needy[64];
  int m = 0;
  for (int c = 1; c <= cfg_.length - 2; ++c) {
    if (!(self.sat_mask >> c & 1)) needy[m++] = c;
  }

  // Greedy perimeter settling once no column needs robots (or the iteration
  // budget ran out); otherwise keep feeding the needy columns, one robot per
  // column when fewer robots than columns remain.
  if (m == 0 || iter >= sched::alg3_max_iters(log_n_)) {
    self.phase = Phase::BSettle;
    self.bw.reset(0);
    if (g.rank == 0 && !settled_peer_here(self.id, ctx) &&
        !smaller_contender_here(self.id, ctx)) {
      self.phase = Phase::Done;
      return {Decision::settle()};
    }
    return {Decision::move(self.bw.choose(ctx.here.degree))};
  }
  const int perimeter = 2 * (cfg_.length + cfg_.width) - 4;
  if (g.count <= perimeter && g.count < m) {
    // Partial dispatch: the nearest needy columns get one robot each.
    if (g.rank < g.count && g.rank < m) {
      self.col = uint16_t(needy[g.rank]);
      self.phase = Phase::DispatchWalk;
      self.sweeping = 0;
      self.bw.reset(0);
      force_first_port(self.bw.hunt, self.long_port);
      return {Decision::move(self.bw.choose(ctx.here.degree))};
    }
    return {};
  }
  const int per_col = std::max(1, g.count / m);
  if (g.rank < per_col * m) {
    self.col = uint16_t(needy[std::min(g.rank / per_col, m - 1)]);
    self.phase = Phase::DispatchWalk;
    self.sweeping = 0;
    self.bw.reset(0);
    force_first_port(self.bw.hunt, self.long_port);
    return {Decision::move(self.bw.choose(ctx.here.degree))};
  }
  return {};  // remainder stays for the next iteration
}

StepOut Alg3::step_dispatch_walk(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.bw.observe(ctx.here.degree, ctx.entry_port)) {
    if (self.bw.hops == self.col) {
      self.phase = Phase::ColEntry;
      self.bw.hunt.start(self.bw.hunt.backward, /*internal=*/true);
      return {Decision::move(self.bw.hunt.choose(ctx.here.degree))};
    }
  }
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

// Standing phases only: mid-probe wanderers from other columns never count.
bool Alg3::settle_candidate(const Mem& m) {
  return m.phase == Phase::SettleLine || m.phase == Phase::ColEntry;
}

StepOut Alg3::settle_here_or_continue(Mem& self, const StepCtx<Mem>& ctx) const {
  self.hop_round = 0;
  const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
    return !p.settled && settle_candidate(*p.mem);
  });
  const bool empty = !settled_peer_here(self.id, ctx);
  if (empty && g.rank == 0) {
    self.phase = Phase::Done;
    return {Decision::settle()};
  }
  self.phase = Phase::SettleLine;
  RobotId landmark = g.min_id;
  if (!empty) settled_peer_here(self.id, ctx, &landmark);
  self.anchor = landmark;
  // Movers: everyone but the settler. The higher-id half scouts so that a
  // fully crashed half costs one timed-out hop, not the whole run.
  const int movers = empty ? g.count - 1 : g.count;
  if (movers <= 0) return {};
  const int my_move_rank = empty ? g.rank - 1 : g.rank;
  const int scouts = (movers + 1) / 2;
  if (my_move_rank >= movers - scouts) {
    self.phase = Phase::SettleScout;
    self.dfs.arm(self.backward, true);
    return scout_tick(self, ctx, Phase::SettleLine);
  }
  return {};
}

StepOut Alg3::step_col_entry(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.bw.hunt.observe(ctx.here.degree, ctx.entry_port)) {
    self.backward = uint8_t(self.bw.hunt.backward);
    self.probe_ok = 0;
    self.hop_pending = 0;
    return settle_here_or_continue(self, ctx);
  }
  return {Decision::move(self.bw.hunt.choose(ctx.here.degree))};
}

StepOut Alg3::step_settle_col(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.hop_pending) {
    self.hop_pending = 0;
    if (ctx.here.degree <= 3) {
      // Leftovers off the far end: walk the perimeter home and report the
      // column as saturated. Wandering strays entered an unknown column and
      // must not report anything.
      self.phase = Phase::WalkHome;
      self.saturated_col = self.sweeping ? 0 : self.col;
      self.bw.reset(ctx.entry_port);
      return {Decision::move(self.bw.choose(ctx.here.degree))};
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
  if (++self.hop_round > sched::kRhop + 2) {
    // Probe timed out (scout half or landmark half gone): re-partition.
    ++self.retry_count;
    return settle_here_or_continue(self, ctx);
  }
  return {};
}

StepOut Alg3::step_walk_home(Mem& self, const StepCtx<Mem>& ctx) const {
  if (self.bw.observe(ctx.here.degree, ctx.entry_port)) {
    if (ctx.here.cls == NodeClass::Corner) {
      bool gathered_here = false;
      for (const auto& p : ctx.colocated) {
        if (!p.settled && p.id != self.id && p.mem->phase == Phase::Gathered) {
          gathered_here = true;
        }
      }
      if (gathered_here) {
        self.phase = Phase::Gathered;  // report flag read at the next census
        return {};
      }
      if (self.bw.corners >= 4) {
        // Nobody left to report to; place ourselves instead.
        self.phase = Phase::BSettle;
        self.bw.reset(ctx.entry_port);
        return step_bsettle(self, ctx);
      }
    }
  }
  return {Decision::move(self.bw.choose(ctx.here.degree))};
}

StepOut Alg3::step_bsettle(Mem& self, const StepCtx<Mem>& ctx) const {
  const bool committed = self.bw.observe(ctx.here.degree, ctx.entry_port);
  const bool standing = self.bw.hunt.mode == PortHunt::Mode::AtNode;
  if (standing && (committed || self.bw.hops == 0)) {
    if (self.bw.corners >= 5 && ctx.here.cls == NodeClass::Boundary) {
      // Full perimeter loop without a seat: settle down a column instead.
      self.phase = Phase::ColEntry;
      self.sweeping = 1;
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
