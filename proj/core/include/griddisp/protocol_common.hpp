#pragma once

#include <cstdint>

#include "griddisp/grid.hpp"
#include "griddisp/types.hpp"

namespace griddisp {

// Static knowledge shared by all robots of a run: the grid dimensions are
// supplied in the configuration (robots know n, and the side lengths for
// rectangles). k is used only to size the declared id field.
struct ProgramConfig {
  int length = 0;  // long dimension (side, for squares)
  int width = 0;   // short dimension
  int64_t n = 0;
  int k = 0;
  bool oriented = false;

  static ProgramConfig from(const GridSpec& spec, int k) {
    ProgramConfig c;
    c.length = spec.cols();
    c.width = spec.rows();
    c.n = spec.node_count();
    c.k = k;
    c.oriented = spec.orientation == Orientation::Oriented;
    return c;
  }

  int id_bits() const { return ceil_log2(k); }
  int log_n() const { return ceil_log2(n); }
};

enum class Quadrant : uint8_t { NW = 0, NE = 1, SE = 2, SW = 3 };

inline const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::NW: return "NW";
    case Quadrant::NE: return "NE";
    case Quadrant::SE: return "SE";
    default: return "SW";
  }
}

}  // namespace griddisp
