#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace griddisp {

using NodeId = int32_t;
using RobotId = int32_t;
using Round = int64_t;

enum class NodeClass : uint8_t { Corner, Boundary, Internal };

inline NodeClass classify_degree(int degree) {
  switch (degree) {
    case 2: return NodeClass::Corner;
    case 3: return NodeClass::Boundary;
    default: return NodeClass::Internal;
  }
}

inline const char* to_string(NodeClass c) {
  switch (c) {
    case NodeClass::Corner: return "corner";
    case NodeClass::Boundary: return "boundary";
    default: return "internal";
  }
}

// Geometric directions over the hidden coordinate frame: row 0 is the
// north edge, col 0 the west edge.
enum class Dir : uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline Dir opposite(Dir d) {
  switch (d) {
    case Dir::N: return Dir::S;
    case Dir::E: return Dir::W;
    case Dir::S: return Dir::N;
    default: return Dir::E;
  }
}

inline const char* to_string(Dir d) {
  switch (d) {
    case Dir::N: return "N";
    case Dir::E: return "E";
    case Dir::S: return "S";
    default: return "W";
  }
}

// Smallest b with 2^b >= x, floored at 1. Used for declared field widths.
inline constexpr int ceil_log2(int64_t x) {
  if (x <= 2) return 1;
  int b = 0;
  int64_t v = 1;
  while (v < x) {
    v <<= 1;
    ++b;
  }
  return b;
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace griddisp
