#include "griddisp/constants.hpp"

#include <sstream>

namespace griddisp {

std::string constants_table_markdown() {
  std::ostringstream os;
  os << "| constant | value | paper reference |\n";
  os << "|---|---|---|\n";
  os << "| R_HOP (straight-hop probe budget) | " << sched::kRhop
     << " | 56 (undercounts DFS backtracking) |\n";
  os << "| hop window | R_HOP + 1 = " << sched::kHopWindow << " | - |\n";
  os << "| boundary hop | " << sched::kBoundaryHop << " rounds | 3 |\n";
  os << "| alg1 total (even branch) | 8L | 6*sqrt(n) |\n";
  os << "| alg1 total (odd branch) | 6L | 6*sqrt(n) |\n";
  os << "| alg2 T1 (stage 1) | 3 + 81*(L-3) + 3*(L-1) | 59*sqrt(n) |\n";
  os << "| alg2 stage 2 | 18L | 18*sqrt(n) |\n";
  os << "| alg2 rounds ceiling K_ALG2 | " << sched::kAlg2RoundsPerSide
     << "*L | 195*sqrt(n) |\n";
  os << "| alg3 T1 (stage 1) | 3 + 81*(L-3+log n+4) + 3*(L-1) | 56*log n + 59*sqrt(n) |\n";
  os << "| alg3 stage-2 trip | 12L, at most ceil(log2 n) trips | 12*sqrt(n)*log n + 6*sqrt(n) |\n";
  os << "| alg3 rounds ceiling K_ALG3 | " << sched::kAlg3RoundsPerSideLog
     << "*L*ceil(log2 n) | 236*sqrt(n)*log n |\n";
  os << "| alg1/alg2 memory ceiling | 32*ceil(log2 n) bits | O(log n) |\n";
  os << "| alg3 memory ceiling | 8*L*ceil(log2 n) bits | 2*sqrt(n)*log n + O(log n) |\n";
  return os.str();
}

}  // namespace griddisp
