#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "griddisp/types.hpp"

namespace griddisp {

enum class Orientation : uint8_t { Oriented, Unoriented };

// Construction parameters for a grid. A square of side s is stored as an
// s x s rectangle; `length` is always the longer dimension.
struct GridSpec {
  enum class Kind : uint8_t { Square, Rectangle };
  Kind kind = Kind::Square;
  int side = 0;    // square only
  int length = 0;  // rectangle only
  int width = 0;   // rectangle only
  Orientation orientation = Orientation::Oriented;
  uint64_t port_seed = 0;

  static GridSpec square(int side, Orientation o, uint64_t seed = 0);
  static GridSpec rectangle(int length, int width, Orientation o, uint64_t seed = 0);

  int cols() const { return kind == Kind::Square ? side : length; }
  int rows() const { return kind == Kind::Square ? side : width; }
  int64_t node_count() const { return int64_t(cols()) * rows(); }

  void validate() const;  // throws ConfigError on bad dimensions

  std::string to_json() const;
  static GridSpec from_json(const std::string& text);
};

// What a robot program may learn about its current node: the degree (hence
// the node class) and, on oriented grids only, which port leads in which
// direction. Anonymous nodes expose nothing else.
struct NodeProfile {
  int degree = 0;
  NodeClass cls = NodeClass::Internal;
  bool oriented = false;
  // port_of_dir[d] in [1,degree], or 0 when the edge is absent. All zero on
  // unoriented grids.
  std::array<int, 4> port_of_dir{0, 0, 0, 0};
};

// Immutable port-labeled grid. Node identifiers, the coordinate map and the
// per-port geometric directions are simulator internals; robot programs only
// ever see NodeProfile and the entry port of their last move.
class Grid {
 public:
  explicit Grid(const GridSpec& spec);

  int64_t node_count() const { return int64_t(cols_) * rows_; }
  int cols() const { return cols_; }
  int rows() const { return rows_; }
  bool oriented() const { return oriented_; }
  const GridSpec& spec() const { return spec_; }

  int degree(NodeId v) const { return nodes_[v].degree; }
  NodeClass node_class(NodeId v) const { return classify_degree(nodes_[v].degree); }

  // Follows port `port` (1-based) out of `v`; returns the neighbor and the
  // port number of the same edge on the neighbor's side.
  struct Hop {
    NodeId node;
    int entry_port;
  };
  Hop traverse(NodeId v, int port) const;

  NodeProfile profile(NodeId v) const;

  // Test-only oracle: hidden coordinates (row, col) with row in [0,rows),
  // col in [0,cols). Robot programs must never touch this.
  std::pair<int, int> oracle_position(NodeId v) const;
  NodeId node_at(int row, int col) const { return NodeId(row) * cols_ + col; }

  // Oracle helper: geometric direction of a port (available in both modes;
  // exposed to programs only via profile() on oriented grids).
  Dir oracle_dir_of_port(NodeId v, int port) const;

  // Canonical JSON of adjacency and port tables, stable key order.
  std::string serialize() const;

 private:
  struct Node {
    int degree = 0;
    std::array<NodeId, 4> nbr{-1, -1, -1, -1};      // by port index 0..degree-1
    std::array<uint8_t, 4> entry{0, 0, 0, 0};       // entry port at nbr, 1-based
    std::array<uint8_t, 4> dir_of_port{0, 0, 0, 0}; // Dir of each port
    std::array<uint8_t, 4> port_of_dir{0, 0, 0, 0}; // indexed by Dir, 1-based or 0
  };

  GridSpec spec_;
  int cols_ = 0;
  int rows_ = 0;
  bool oriented_ = false;
  std::vector<Node> nodes_;
};

}  // namespace griddisp
