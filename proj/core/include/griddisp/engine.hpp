#pragma once

#include <algorithm>
#include <concepts>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "griddisp/adversary.hpp"
#include "griddisp/grid.hpp"
#include "griddisp/trace.hpp"
#include "griddisp/types.hpp"

namespace griddisp {

// What a program may do in the Move part of a cycle.
struct Decision {
  enum class Act : uint8_t { Stay, Move, Settle };
  Act act = Act::Stay;
  int port = 0;

  static Decision stay() { return {}; }
  static Decision move(int port) { return {Act::Move, port}; }
  static Decision settle() { return {Act::Settle, 0}; }
};

struct StepOut {
  Decision decision{};
  RobotId merged_into = -1;  // >= 0 emits a `merged` trace event
};

// One co-located robot as seen during Communicate. `colocated` spans include
// the acting robot itself; programs skip their own id.
template <class Mem>
struct Peer {
  RobotId id;
  bool settled;
  const Mem* mem;
};

template <class Mem>
struct StepCtx {
  Round round = 0;
  NodeProfile here{};
  // Port at the current node through which the robot last arrived; 0 if it
  // has not moved since placement. This is the "backward port".
  int entry_port = 0;
  std::span<const Peer<Mem>> colocated{};
};

// A robot program: a deterministic state machine over a value-type memory.
// The engine guarantees snapshot semantics -- during step(), all peer
// memories are the pre-round states, and `self` starts as a copy of the
// robot's own pre-round state.
template <class P>
concept Protocol = requires(const P& p, typename P::Mem& self, const typename P::Mem& cself,
                            const StepCtx<typename P::Mem>& ctx) {
  { p.init(RobotId{1}) } -> std::same_as<typename P::Mem>;
  { p.step(self, ctx) } -> std::same_as<StepOut>;
  { p.memory_bits(cself) } -> std::same_as<int>;
  { p.phase(cself) } -> std::same_as<std::string_view>;
  { p.retries(cself) } -> std::same_as<long>;
  { p.name() } -> std::same_as<std::string_view>;
};

struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulationResult {
  bool dispersed = false;
  bool completed = false;  // all live robots halted before the budget ran out
  Round rounds_used = 0;
  int robot_count = 0;
  int crash_count = 0;
  int peak_memory_bits_max = 0;
  std::vector<int> peak_memory_bits;  // indexed by robot id - 1
  long retries_total = 0;
  uint64_t trace_digest = 0;
  std::map<std::string, std::pair<Round, Round>> phase_spans;

  std::string to_json() const;
};

// Robot i (1-based) starts at placement[i-1].
using Placement = std::vector<NodeId>;

Placement placement_from_seed(const Grid& grid, int k, uint64_t seed);

namespace detail {

inline void validate_placement(const Grid& grid, const Placement& placement) {
  if (placement.empty()) throw ConfigError("run: need at least one robot");
  if (int64_t(placement.size()) > grid.node_count()) {
    throw ConfigError("run: k exceeds node count");
  }
  for (NodeId v : placement) {
    if (v < 0 || v >= grid.node_count()) throw ConfigError("run: placement node out of range");
  }
}

}  // namespace detail

// Executes the synchronous Communicate-Compute-Move loop:
//   1. crashes land (before Communicate -- a robot crashed at round t is
//      invisible from round t on),
//   2. every live unsettled robot computes from its own state, the states of
//      co-located live robots, and the local node profile,
//   3. settles commit, then all moves apply simultaneously.
// Settled robots stay visible but are never stepped again.
template <Protocol P>
SimulationResult run_simulation(const Grid& grid, const Placement& placement, const P& program,
                                CrashPolicy& policy, Round round_budget, RoundTrace& trace,
                                std::vector<typename P::Mem>* final_mems = nullptr) {
  using Mem = typename P::Mem;
  detail::validate_placement(grid, placement);
  const int k = int(placement.size());

  struct Core {
    NodeId at = 0;
    bool settled = false;
    bool crashed = false;
    int entry_port = 0;
    int peak_bits = 0;
  };
  std::vector<Core> core(static_cast<size_t>(k));
  std::vector<Mem> mem;
  mem.reserve(size_t(k));
  std::vector<Mem> next(static_cast<size_t>(k), program.init(RobotId{1}));
  for (int i = 0; i < k; ++i) {
    core[size_t(i)].at = placement[size_t(i)];
    mem.push_back(program.init(RobotId(i + 1)));
    core[size_t(i)].peak_bits = program.memory_bits(mem.back());
  }

  // occupants[v]: live robot ids at v, ascending.
  std::vector<std::vector<RobotId>> occupants(size_t(grid.node_count()));
  for (int i = 0; i < k; ++i) occupants[size_t(core[size_t(i)].at)].push_back(RobotId(i + 1));

  std::vector<std::string_view> cur_phase(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    cur_phase[size_t(i)] = program.phase(mem[size_t(i)]);
    trace.append({0, RobotId(i + 1), Ev::Phase, 0, cur_phase[size_t(i)]});
  }

  int live_unsettled = k;
  int crash_count = 0;
  std::vector<RobotId> crash_buf;
  std::vector<RobotPublic> world_buf;
  std::vector<Peer<Mem>> peer_buf;
  std::vector<std::pair<RobotId, Decision>> decisions;
  std::vector<bool> stepped(size_t(k), false);

  SimulationResult res;
  res.robot_count = k;

  Round r = 0;
  bool completed = (live_unsettled == 0);
  for (; r < round_budget && !completed; ++r) {
    // 1. Crashes.
    if (policy.needs_world()) {
      world_buf.clear();
      for (int i = 0; i < k; ++i) {
        if (core[size_t(i)].crashed) continue;
        world_buf.push_back(
            {RobotId(i + 1), core[size_t(i)].at, core[size_t(i)].settled, cur_phase[size_t(i)]});
      }
    }
    policy.plan(r, world_buf, crash_buf);
    for (RobotId id : crash_buf) {
      if (id < 1 || id > k) continue;
      Core& c = core[size_t(id - 1)];
      if (c.crashed) continue;
      c.crashed = true;
      auto& occ = occupants[size_t(c.at)];
      occ.erase(std::find(occ.begin(), occ.end(), id));
      if (!c.settled) --live_unsettled;
      ++crash_count;
      trace.append({r, id, Ev::Crashed, 0, {}});
    }

    // 2+3. Communicate & Compute (snapshot semantics).
    decisions.clear();
    std::fill(stepped.begin(), stepped.end(), false);
    for (int i = 0; i < k; ++i) {
      Core& c = core[size_t(i)];
      if (c.crashed || c.settled) continue;
      peer_buf.clear();
      for (RobotId pid : occupants[size_t(c.at)]) {
        peer_buf.push_back({pid, core[size_t(pid - 1)].settled, &mem[size_t(pid - 1)]});
      }
      StepCtx<Mem> ctx;
      ctx.round = r;
      ctx.here = grid.profile(c.at);
      ctx.entry_port = c.entry_port;
      ctx.colocated = peer_buf;
      next[size_t(i)] = mem[size_t(i)];
      const StepOut out = program.step(next[size_t(i)], ctx);
      stepped[size_t(i)] = true;
      if (out.decision.act == Decision::Act::Move &&
          (out.decision.port < 1 || out.decision.port > ctx.here.degree)) {
        throw SimulationError("protocol bug: robot " + std::to_string(i + 1) + " at round " +
                              std::to_string(r) + " chose invalid port " +
                              std::to_string(out.decision.port));
      }
      if (out.merged_into >= 0) trace.append({r, RobotId(i + 1), Ev::Merged, out.merged_into, {}});
      decisions.emplace_back(RobotId(i + 1), out.decision);
    }

    // Install new memories; emit phase-change events.
    for (int i = 0; i < k; ++i) {
      if (!stepped[size_t(i)]) continue;
      mem[size_t(i)] = next[size_t(i)];
      const std::string_view ph = program.phase(mem[size_t(i)]);
      if (ph != cur_phase[size_t(i)]) {
        cur_phase[size_t(i)] = ph;
        trace.append({r, RobotId(i + 1), Ev::Phase, 0, ph});
      }
      const int bits = program.memory_bits(mem[size_t(i)]);
      core[size_t(i)].peak_bits = std::max(core[size_t(i)].peak_bits, bits);
    }

    // 4. Settles commit, then all moves apply simultaneously.
    for (const auto& [id, d] : decisions) {
      if (d.act != Decision::Act::Settle) continue;
      core[size_t(id - 1)].settled = true;
      --live_unsettled;
      trace.append({r, id, Ev::Settled, 0, {}});
    }
    struct Mv {
      RobotId id;
      NodeId to;
      int entry;
    };
    std::vector<Mv> moves;
    for (const auto& [id, d] : decisions) {
      if (d.act != Decision::Act::Move) continue;
      const auto hop = grid.traverse(core[size_t(id - 1)].at, d.port);
      moves.push_back({id, hop.node, hop.entry_port});
      trace.append({r, id, Ev::Moved, d.port, {}});
    }
    for (const auto& m : moves) {
      auto& occ = occupants[size_t(core[size_t(m.id - 1)].at)];
      occ.erase(std::find(occ.begin(), occ.end(), m.id));
    }
    for (const auto& m : moves) {
      Core& c = core[size_t(m.id - 1)];
      c.at = m.to;
      c.entry_port = m.entry;
      auto& occ = occupants[size_t(m.to)];
      occ.insert(std::upper_bound(occ.begin(), occ.end(), m.id), m.id);
    }

    completed = (live_unsettled == 0);
  }

  res.completed = completed;
  res.rounds_used = completed ? std::max<Round>(r - 1, 0) : round_budget;
  res.crash_count = crash_count;

  // Dispersed: every live robot settled, no node with two live robots.
  bool dispersed = completed;
  for (const auto& occ : occupants) {
    if (occ.size() > 1) dispersed = false;
  }
  res.dispersed = dispersed;

  res.peak_memory_bits.resize(size_t(k));
  for (int i = 0; i < k; ++i) {
    res.peak_memory_bits[size_t(i)] = core[size_t(i)].peak_bits;
    res.peak_memory_bits_max = std::max(res.peak_memory_bits_max, core[size_t(i)].peak_bits);
    if (!core[size_t(i)].crashed) res.retries_total += program.retries(mem[size_t(i)]);
  }
  for (const auto& e : trace.events()) {
    if (e.ev != Ev::Phase) continue;
    auto [it, fresh] = res.phase_spans.try_emplace(std::string(e.tag), e.round, e.round);
    if (!fresh) {
      it->second.first = std::min(it->second.first, e.round);
      it->second.second = std::max(it->second.second, e.round);
    }
  }
  res.trace_digest = trace.digest();
  if (final_mems != nullptr) *final_mems = std::move(mem);
  return res;
}

}  // namespace griddisp
