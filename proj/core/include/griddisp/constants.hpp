#pragma once

#include <cstdint>
#include <string>

#include "griddisp/types.hpp"

namespace griddisp {

// Schedule constants shared by the protocols and the bound checkers. All
// round budgets are expressed in terms of the long grid dimension L (the
// side for squares) so the rectangular variants reuse them unchanged.
//
// kRhop is the worst-case cost of one straight-line probe: the scout leaves
// the start node, runs a depth-3 DFS over all non-backtracking walks
// (3 + 9 + 27 = 39 tree edges, each walked twice = 78 moves) and returns,
// so 80 moves total. A hop window adds one round for the group move.
namespace sched {

inline constexpr int kRhop = 80;
inline constexpr int kHopWindow = kRhop + 1;

// Per-hop cost of a boundary walk: at most one wrong probe into the interior
// (2 rounds) plus the committed move.
inline constexpr int kBoundaryHop = 3;

// ---- Algorithm 1 (oriented, crash-tolerant) ----
inline constexpr Round alg1_reach_boundary_end(int len) { return len; }
inline constexpr Round alg1_reach_corner_end(int len) { return 2 * Round(len); }
// Even branch: balancing walk window, then quadrant dispatch.
inline constexpr Round alg1_balance_end(int len) { return 6 * Round(len); }
inline constexpr Round alg1_even_total(int len) { return 8 * Round(len); }
// Odd branch: side middle, center, corner, dispatch, settle.
inline constexpr Round alg1_mid_end(int len) { return 2 * Round(len) + (len + 1) / 2; }
inline constexpr Round alg1_center_end(int len) { return 3 * Round(len); }
inline constexpr Round alg1_nw_end(int len) { return 4 * Round(len); }
inline constexpr Round alg1_col_end(int len) { return 5 * Round(len); }
inline constexpr Round alg1_odd_total(int len) { return 6 * Round(len); }

// ---- Algorithm 2 (unoriented, non-faulty) ----
// Stage 1: one free first hop, at most len-3 probed hops (a straight run
// from an internal node commits within len-2 moves), then a boundary walk.
// Two extra rounds let the final corner arrival be processed before the
// stage-2 census fires.
inline constexpr Round alg2_t1(int len) {
  const int hops = len > 3 ? len - 3 : 0;
  return 3 + Round(kHopWindow) * hops + Round(kBoundaryHop) * (len - 1);
}
inline constexpr Round alg2_travel_window(int len) { return 12 * Round(len); }
inline constexpr Round alg2_t2(int len) { return alg2_t1(len) + 18 * Round(len); }
// Terminal budget: column count trip down and up, dispatch descent, walks.
inline constexpr Round alg2_t_end(int len) {
  return alg2_t2(len) + Round(3 * kHopWindow + 24) * len;
}
inline constexpr int kAlg2RoundsPerSide = 200;  // acceptance ceiling K_ALG2

// ---- Algorithm 3 (unoriented, crash-tolerant) ----
// Stage 1 adds ceil(log2 n) + 4 failure/merge windows to the hop count.
inline constexpr Round alg3_t1(int len, int log_n) {
  const int hops = (len > 3 ? len - 3 : 0) + log_n + 4;
  return 3 + Round(kHopWindow) * hops + Round(kBoundaryHop) * (len - 1);
}
inline constexpr Round alg3_trip_window(int len) { return 12 * Round(len); }
inline constexpr Round alg3_t2(int len, int log_n) {
  return alg3_t1(len, log_n) + alg3_trip_window(len) * log_n + 6 * Round(len);
}
// One dispatch iteration: boundary walk out, column descent with up to
// log n halving retries, walk home.
inline constexpr Round alg3_iter_window(int len, int log_n) {
  return Round(kRhop + 16) * len + Round(kRhop + 2) * log_n;
}
inline constexpr int alg3_max_iters(int log_n) { return 2 * log_n; }
inline constexpr Round alg3_t_end(int len, int log_n) {
  return alg3_t2(len, log_n) + alg3_iter_window(len, log_n) * alg3_max_iters(log_n) +
         24 * Round(len);
}
inline constexpr int kAlg3RoundsPerSideLog = 220;  // acceptance ceiling K_ALG3

// ---- Memory ceilings (bits per robot) ----
inline constexpr int alg1_mem_ceiling(int64_t n) { return 32 * ceil_log2(n); }
inline constexpr int alg2_mem_ceiling(int64_t n) { return 32 * ceil_log2(n); }
inline constexpr int alg3_mem_ceiling(int len, int64_t n) { return 8 * len * ceil_log2(n); }

}  // namespace sched

// Paper-reported constants, kept for side-by-side reporting only; the
// assertions in the checkers use the implementation constants above.
struct PaperBounds {
  static constexpr int probe_rounds = 56;          // our kRhop = 80
  static constexpr int lemma1_boundary_factor = 3; // 3*sqrt(n) to a corner
  static constexpr int lemma2_gather_factor = 18;  // 18*sqrt(n) stage 2
  static constexpr int lemma3_disperse_factor = 118;
  static constexpr int alg2_total_factor = 195;    // our K_ALG2 = 200
  static constexpr int lemma6_trip_factor = 12;    // 12*sqrt(n)*log n + 6*sqrt(n)
  static constexpr int lemma8_factor = 236;        // our K_ALG3 = 220
  static constexpr int alg1_total_factor_paper = 6;  // we budget 8 for the even branch
};

// Human-readable constants table (markdown), emitted by the CLI.
std::string constants_table_markdown();

}  // namespace griddisp
