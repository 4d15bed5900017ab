#include "griddisp/alg1.hpp"

#include "griddisp/constants.hpp"
#include "griddisp/kernels.hpp"

namespace griddisp {

namespace {

// Clockwise travel around the boundary: the exit direction at each corner.
Dir clockwise_exit(Quadrant corner) {
  switch (corner) {
    case Quadrant::NW: return Dir::E;
    case Quadrant::NE: return Dir::S;
    case Quadrant::SE: return Dir::W;
    default: return Dir::N;
  }
}

// Direction a corner's column groups descend into their quadrant.
Dir inward_dir(Quadrant corner) {
  switch (corner) {
    case Quadrant::NW: return Dir::S;
    case Quadrant::NE: return Dir::W;
    case Quadrant::SE: return Dir::N;
    default: return Dir::E;
  }
}

int port_toward(const NodeProfile& p, Dir d) {
  const int port = p.port_of_dir[size_t(d)];
  if (port == 0) throw SimulationError("alg1: expected edge missing (orientation bug)");
  return port;
}

Dir dir_of_port(const NodeProfile& p, int port) {
  for (int d = 0; d < 4; ++d) {
    if (p.port_of_dir[size_t(d)] == port) return Dir(d);
  }
  throw SimulationError("alg1: port has no direction");
}

// Interior-facing direction at a boundary node: the present direction whose
// opposite edge is missing.
Dir interior_dir(const NodeProfile& p) {
  for (int d = 0; d < 4; ++d) {
    if (p.port_of_dir[size_t(d)] != 0 && p.port_of_dir[size_t(opposite(Dir(d)))] == 0) {
      return Dir(d);
    }
  }
  throw SimulationError("alg1: no interior direction at node");
}

// Minimum-numbered port that runs along the boundary (both endpoints of its
// axis present).
int min_parallel_port(const NodeProfile& p) {
  int best = 0;
  for (int d = 0; d < 4; ++d) {
    const int port = p.port_of_dir[size_t(d)];
    if (port == 0) continue;
    if (p.port_of_dir[size_t(opposite(Dir(d)))] == 0) continue;
    if (best == 0 || port < best) best = port;
  }
  if (best == 0) throw SimulationError("alg1: no boundary-parallel port");
  return best;
}

}  // namespace

Quadrant corner_identity(const NodeProfile& p) {
  if (!p.oriented) throw ConfigError("corner_identity: requires an oriented grid");
  if (p.cls != NodeClass::Corner) throw ConfigError("corner_identity: not a corner node");
  const bool e = p.port_of_dir[size_t(Dir::E)] != 0;
  const bool s = p.port_of_dir[size_t(Dir::S)] != 0;
  const bool w = p.port_of_dir[size_t(Dir::W)] != 0;
  const bool n = p.port_of_dir[size_t(Dir::N)] != 0;
  if (e && s) return Quadrant::NW;
  if (w && s) return Quadrant::NE;
  if (w && n) return Quadrant::SE;
  if (e && n) return Quadrant::SW;
  throw ConfigError("corner_identity: degenerate profile");
}

Alg1::Alg1(const ProgramConfig& cfg) : cfg_(cfg) {
  if (!cfg.oriented) throw ConfigError("alg1 requires an oriented grid");
  odd_ = (cfg.length % 2 == 1) && (cfg.width % 2 == 1);
}

Round Alg1::total_budget() const {
  return odd_ ? sched::alg1_odd_total(cfg_.length) : sched::alg1_even_total(cfg_.length);
}

int Alg1::quadrant_cols(Quadrant q) const {
  const int lh = cfg_.length / 2, lc = cfg_.length - lh;
  const int wh = cfg_.width / 2, wc = cfg_.width - wh;
  switch (q) {
    case Quadrant::NW: return lc;
    case Quadrant::NE: return wc;
    case Quadrant::SE: return lh;
    default: return wh;
  }
}

int Alg1::quadrant_depth(Quadrant q) const {
  const int lh = cfg_.length / 2;
  const int wh = cfg_.width / 2;
  switch (q) {
    case Quadrant::NW: return cfg_.width - wh;
    case Quadrant::NE: return cfg_.length - lh;
    case Quadrant::SE: return wh;
    default: return lh;
  }
}

std::string_view Alg1::phase(const Mem& m) const {
  switch (m.phase) {
    case Phase::Start: return "a1.start";
    case Phase::ToBoundary: return "a1.line";
    case Phase::WaitBoundary: return "a1.wait";
    case Phase::ToCorner: return "a1.bwalk";
    case Phase::Corner: return "a1.corner";
    case Phase::Balance: return "a1.balance";
    case Phase::Kept: return "a1.kept";
    case Phase::MidWalk: return "a1.mid";
    case Phase::ToCenter: return "a1.center";
    case Phase::AtCenter: return "a1.atcenter";
    case Phase::ToNwNorth: return "a1.nw_n";
    case Phase::ToNwWest: return "a1.nw_w";
    case Phase::NwWait: return "a1.nwwait";
    case Phase::Dispatch: return "a1.dispatch";
    case Phase::SettleCol: return "a1.settle";
    default: return "done";
  }
}

int Alg1::memory_bits(const Mem&) const {
  const int len = cfg_.length;
  return cfg_.id_bits()             // id
         + ceil_log2(8 * len + 1)   // round counter
         + 4                        // phase
         + 2                        // heading
         + 1                        // kept flag
         + 3                        // corners passed
         + ceil_log2(len + 1)       // walk countdown
         + ceil_log2(len + 1)       // target column
         + 2;                       // quadrant
}

// Settle candidates for the greedy column descent: robots already descending
// plus a cohort arriving this round (dispatch walk exhausted). Both tests
// look only at communicate-snapshot fields, so co-located robots agree.
bool Alg1::settle_candidate(const Mem& m) {
  return m.phase == Phase::SettleCol || (m.phase == Phase::Dispatch && m.steps_left == 0);
}

StepOut Alg1::settle_col_move(Mem& self, const StepCtx<Mem>& ctx) const {
  self.phase = Phase::SettleCol;
  if (!settled_peer_here(self.id, ctx)) {
    const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
      return !p.settled && settle_candidate(*p.mem);
    });
    if (g.rank == 0) {
      self.phase = Phase::Done;
      return {Decision::settle()};
    }
  }
  const int port = ctx.here.port_of_dir[size_t(self.heading)];
  if (port == 0) return {};  // far wall with no free seat; stay put
  return {Decision::move(port)};
}

// Column assignment at a dispatch census: rank r of C robots over `ncols`
// columns in groups of ceil(C/ncols), lowest ids nearest.
StepOut Alg1::begin_dispatch(Mem& self, const StepCtx<Mem>& ctx, const GroupScan& g, int ncols,
                             Dir walk, Dir descend) const {
  const int group = (g.count + ncols - 1) / ncols;
  self.col = uint16_t(g.rank / group);
  if (self.col == 0) {
    // Column 0 starts at the corner itself. Peers are still in their census
    // phase this round, so arbitrate by census rank, not settle candidacy.
    self.heading = descend;
    self.phase = Phase::SettleCol;
    if (g.rank == 0 && !settled_peer_here(self.id, ctx)) {
      self.phase = Phase::Done;
      return {Decision::settle()};
    }
    return {Decision::move(port_toward(ctx.here, descend))};
  }
  self.phase = Phase::Dispatch;
  self.heading = walk;
  self.steps_left = uint16_t(self.col - 1);
  return {Decision::move(port_toward(ctx.here, walk))};
}

StepOut Alg1::step(Mem& self, const StepCtx<Mem>& ctx) const {
  self.tick = ctx.round;
  const Round len = cfg_.length;
  const NodeProfile& here = ctx.here;

  switch (self.phase) {
    case Phase::Start: {
      if (here.cls == NodeClass::Corner) {
        self.phase = Phase::Corner;
        return {};
      }
      if (here.degree <= 3) {
        self.phase = Phase::WaitBoundary;
        return {};
      }
      self.heading = dir_of_port(here, 1);
      self.phase = Phase::ToBoundary;
      return {Decision::move(1)};
    }
    case Phase::ToBoundary: {
      if (here.cls == NodeClass::Corner) {
        self.phase = Phase::Corner;
        return {};
      }
      if (here.degree <= 3) {
        self.phase = Phase::WaitBoundary;
        return {};
      }
      return {Decision::move(port_toward(here, self.heading))};
    }
    case Phase::WaitBoundary: {
      if (ctx.round < len) return {};
      self.phase = Phase::ToCorner;
      [[fallthrough]];
    }
    case Phase::ToCorner: {
      if (here.cls == NodeClass::Corner) {
        self.phase = Phase::Corner;
        return {};
      }
      return {Decision::move(min_parallel_port(here))};
    }
    default:
      break;
  }
  return odd_ ? step_odd(self, ctx) : step_even(self, ctx);
}

StepOut Alg1::step_even(Mem& self, const StepCtx<Mem>& ctx) const {
  const Round len = cfg_.length;
  const NodeProfile& here = ctx.here;

  switch (self.phase) {
    case Phase::Corner: {
      if (ctx.round < 2 * len) return {};
      // All live robots stand on corners; the lowest ids up to the quadrant
      // capacity stay, the rest walk clockwise to the first corner with room.
      const Quadrant q = corner_identity(here);
      const int cap = quadrant_cols(q) * quadrant_depth(q);
      const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
        return !p.settled && p.mem->phase == Phase::Corner;
      });
      if (g.rank < cap) {
        self.phase = Phase::Kept;
        self.kept = 1;
        return {};
      }
      self.phase = Phase::Balance;
      self.corners_passed = 0;
      self.heading = clockwise_exit(q);
      return {Decision::move(port_toward(here, self.heading))};
    }
    case Phase::Balance: {
      if (here.cls == NodeClass::Corner) {
        const Quadrant q = corner_identity(here);
        const int cap = quadrant_cols(q) * quadrant_depth(q);
        int kept_here = 0;
        for (const auto& p : ctx.colocated) {
          if (p.id != self.id && !p.settled && p.mem->phase == Phase::Kept) ++kept_here;
        }
        const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
          return !p.settled && p.mem->phase == Phase::Balance;
        });
        if (kept_here + g.rank < cap || self.corners_passed >= 4) {
          self.phase = Phase::Kept;
          self.kept = 1;
          return {};
        }
        ++self.corners_passed;
        self.heading = clockwise_exit(q);
      }
      return {Decision::move(port_toward(here, self.heading))};
    }
    case Phase::Kept: {
      if (ctx.round < 6 * len) return {};
      const Quadrant q = corner_identity(here);
      self.quadrant = q;
      const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
        return !p.settled && p.mem->phase == Phase::Kept;
      });
      return begin_dispatch(self, ctx, g, quadrant_cols(q), clockwise_exit(q), inward_dir(q));
    }
    case Phase::Dispatch: {
      if (self.steps_left == 0) {
        self.heading = inward_dir(self.quadrant);
        return settle_col_move(self, ctx);
      }
      --self.steps_left;
      return {Decision::move(port_toward(here, self.heading))};
    }
    case Phase::SettleCol:
      return settle_col_move(self, ctx);
    default:
      return {};
  }
}

StepOut Alg1::step_odd(Mem& self, const StepCtx<Mem>& ctx) const {
  const Round len = cfg_.length;
  const NodeProfile& here = ctx.here;

  switch (self.phase) {
    case Phase::Corner: {
      if (ctx.round < 2 * len) return {};
      // Walk half of the minimum-port side, then turn inward to the center.
      const Dir d1 = dir_of_port(here, 1);
      const bool vertical = d1 == Dir::N || d1 == Dir::S;
      const int side_len = vertical ? cfg_.width : cfg_.length;
      self.heading = d1;
      self.steps_left = uint16_t((side_len - 1) / 2);
      self.phase = Phase::MidWalk;
      [[fallthrough]];
    }
    case Phase::MidWalk: {
      if (self.steps_left > 0) {
        --self.steps_left;
        return {Decision::move(port_toward(here, self.heading))};
      }
      if (ctx.round < 2 * len + (len + 1) / 2) return {};
      self.heading = interior_dir(here);
      const bool vertical = self.heading == Dir::N || self.heading == Dir::S;
      self.steps_left = uint16_t(((vertical ? cfg_.width : cfg_.length) - 1) / 2);
      self.phase = Phase::ToCenter;
      [[fallthrough]];
    }
    case Phase::ToCenter: {
      if (self.steps_left > 0) {
        --self.steps_left;
        return {Decision::move(port_toward(here, self.heading))};
      }
      self.phase = Phase::AtCenter;
      [[fallthrough]];
    }
    case Phase::AtCenter: {
      if (ctx.round < 3 * len) return {};
      self.phase = Phase::ToNwNorth;
      self.steps_left = uint16_t((cfg_.width - 1) / 2);
      self.heading = Dir::N;
      [[fallthrough]];
    }
    case Phase::ToNwNorth: {
      if (self.steps_left > 0) {
        --self.steps_left;
        return {Decision::move(port_toward(here, self.heading))};
      }
      self.phase = Phase::ToNwWest;
      self.steps_left = uint16_t((cfg_.length - 1) / 2);
      self.heading = Dir::W;
      [[fallthrough]];
    }
    case Phase::ToNwWest: {
      if (self.steps_left > 0) {
        --self.steps_left;
        return {Decision::move(port_toward(here, self.heading))};
      }
      self.phase = Phase::NwWait;
      [[fallthrough]];
    }
    case Phase::NwWait: {
      if (ctx.round < 4 * len) return {};
      // One gathered group fills all full-height columns from the NW corner.
      const auto g = scan_group<Mem>(self.id, ctx, [](const Peer<Mem>& p) {
        return !p.settled && p.mem->phase == Phase::NwWait;
      });
      self.quadrant = Quadrant::NW;
      return begin_dispatch(self, ctx, g, cfg_.length, Dir::E, Dir::S);
    }
    case Phase::Dispatch: {
      if (self.steps_left == 0) {
        self.heading = Dir::S;
        return settle_col_move(self, ctx);
      }
      --self.steps_left;
      return {Decision::move(port_toward(here, self.heading))};
    }
    case Phase::SettleCol:
      return settle_col_move(self, ctx);
    default:
      return {};
  }
}

}  // namespace griddisp
