#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <set>

#include "doctest.h"
#include "griddisp/grid.hpp"

using namespace griddisp;

namespace {

struct Census {
  int corners = 0;
  int boundary = 0;
  int internal = 0;
};

Census census(const Grid& g) {
  Census c;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    switch (g.node_class(v)) {
      case NodeClass::Corner: ++c.corners; break;
      case NodeClass::Boundary: ++c.boundary; break;
      case NodeClass::Internal: ++c.internal; break;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("degree census matches the closed forms") {
  SUBCASE("square side 4: 4 corner, 8 boundary, 4 internal") {
    Grid g(GridSpec::square(4, Orientation::Oriented));
    const auto c = census(g);
    CHECK(c.corners == 4);
    CHECK(c.boundary == 8);
    CHECK(c.internal == 4);
  }
  SUBCASE("square side 3: smallest admitted square") {
    Grid g(GridSpec::square(3, Orientation::Unoriented, 1));
    const auto c = census(g);
    CHECK(c.corners == 4);
    CHECK(c.boundary == 4);
    CHECK(c.internal == 1);
  }
  SUBCASE("rectangle 6x3") {
    Grid g(GridSpec::rectangle(6, 3, Orientation::Unoriented, 0));
    const auto c = census(g);
    CHECK(c.corners == 4);
    CHECK(c.boundary == 10);  // 2*(6+3) - 8
    CHECK(c.internal == 4);
  }
  SUBCASE("property: sides 3..20, several seeds") {
    for (int side = 3; side <= 20; ++side) {
      for (uint64_t seed = 0; seed < 20; ++seed) {
        Grid g(GridSpec::square(side, Orientation::Unoriented, seed));
        const auto c = census(g);
        CHECK(c.corners == 4);
        CHECK(c.boundary == 4 * side - 8);
        CHECK(c.internal == (side - 2) * (side - 2));
      }
    }
  }
}

TEST_CASE("construction rejects bad dimensions") {
  CHECK_THROWS_AS(GridSpec::square(2, Orientation::Oriented), ConfigError);
  CHECK_THROWS_AS(GridSpec::square(0, Orientation::Oriented), ConfigError);
  CHECK_THROWS_AS(GridSpec::rectangle(6, 2, Orientation::Unoriented), ConfigError);
  CHECK_THROWS_AS(GridSpec::rectangle(3, 6, Orientation::Unoriented), ConfigError);
  CHECK_THROWS_AS(GridSpec::rectangle(-1, -1, Orientation::Unoriented), ConfigError);
}

TEST_CASE("traverse is an involution with endpoint swap") {
  for (uint64_t seed : {0ull, 7ull, 11ull}) {
    Grid g(GridSpec::square(6, Orientation::Unoriented, seed));
    for (NodeId v = 0; v < g.node_count(); ++v) {
      for (int p = 1; p <= g.degree(v); ++p) {
        const auto hop = g.traverse(v, p);
        const auto back = g.traverse(hop.node, hop.entry_port);
        CHECK(back.node == v);
        CHECK(back.entry_port == p);
      }
    }
  }
}

TEST_CASE("traverse rejects out-of-range ports") {
  Grid g(GridSpec::square(4, Orientation::Oriented));
  const NodeId corner = 0;
  CHECK(g.degree(corner) == 2);
  CHECK_THROWS_AS(g.traverse(corner, 0), std::out_of_range);
  CHECK_THROWS_AS(g.traverse(corner, 3), std::out_of_range);
}

TEST_CASE("port tables are permutations of 1..degree") {
  // Unoriented side-4 grid with the example seed: every node's entry ports
  // from its neighbors cover {1..degree} exactly once.
  Grid g(GridSpec::square(4, Orientation::Unoriented, 7));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::set<int> seen;
    for (int p = 1; p <= g.degree(v); ++p) {
      const auto hop = g.traverse(v, p);
      CHECK(hop.entry_port >= 1);
      CHECK(hop.entry_port <= g.degree(hop.node));
      CHECK(seen.insert(p).second);
    }
    CHECK(int(seen.size()) == g.degree(v));
  }
}

TEST_CASE("oriented direction map is globally consistent") {
  Grid g(GridSpec::square(8, Orientation::Oriented));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto prof = g.profile(v);
    const auto [row, col] = g.oracle_position(v);
    if (const int p = prof.port_of_dir[size_t(Dir::E)]; p != 0) {
      const auto hop = g.traverse(v, p);
      const auto [r2, c2] = g.oracle_position(hop.node);
      CHECK(r2 == row);
      CHECK(c2 == col + 1);
    }
    if (const int p = prof.port_of_dir[size_t(Dir::S)]; p != 0) {
      const auto hop = g.traverse(v, p);
      const auto [r2, c2] = g.oracle_position(hop.node);
      CHECK(r2 == row + 1);
      CHECK(c2 == col);
    }
  }
  // Following one direction for h hops moves the matching coordinate by h.
  NodeId v = g.node_at(3, 1);
  for (int h = 1; h <= 4; ++h) {
    v = g.traverse(v, g.profile(v).port_of_dir[size_t(Dir::E)]).node;
    const auto [r, c] = g.oracle_position(v);
    CHECK(r == 3);
    CHECK(c == 1 + h);
  }
}

TEST_CASE("oriented internal nodes number ports W,S,E,N") {
  Grid g(GridSpec::square(5, Orientation::Oriented));
  const NodeId v = g.node_at(2, 2);
  const auto prof = g.profile(v);
  CHECK(prof.port_of_dir[size_t(Dir::W)] == 1);
  CHECK(prof.port_of_dir[size_t(Dir::S)] == 2);
  CHECK(prof.port_of_dir[size_t(Dir::E)] == 3);
  CHECK(prof.port_of_dir[size_t(Dir::N)] == 4);
  // A robot entering via port 1 continues straight through port 3.
  const auto in_w = g.traverse(v, 1);
  const auto back = g.traverse(in_w.node, in_w.entry_port);
  CHECK(back.node == v);
}

TEST_CASE("node_profile exposes directions only on oriented grids") {
  Grid oriented(GridSpec::square(4, Orientation::Oriented));
  Grid unoriented(GridSpec::square(4, Orientation::Unoriented, 3));
  CHECK(oriented.profile(5).oriented);
  CHECK(oriented.profile(5).port_of_dir != std::array<int, 4>{0, 0, 0, 0});
  CHECK_FALSE(unoriented.profile(5).oriented);
  CHECK(unoriented.profile(5).port_of_dir == std::array<int, 4>{0, 0, 0, 0});
}

TEST_CASE("corner profile") {
  Grid g(GridSpec::square(4, Orientation::Unoriented, 9));
  int corner_count = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 2) {
      CHECK(g.node_class(v) == NodeClass::Corner);
      ++corner_count;
    }
  }
  CHECK(corner_count == 4);
}

TEST_CASE("oracle positions") {
  Grid g(GridSpec::square(5, Orientation::Unoriented, 2));
  SUBCASE("degree-2 nodes sit at the four extreme coordinates") {
    std::set<std::pair<int, int>> corners;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (g.degree(v) == 2) corners.insert(g.oracle_position(v));
    }
    CHECK(corners == std::set<std::pair<int, int>>{{0, 0}, {0, 4}, {4, 0}, {4, 4}});
  }
  SUBCASE("traverse neighbors are at Manhattan distance 1") {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const auto [r, c] = g.oracle_position(v);
      for (int p = 1; p <= g.degree(v); ++p) {
        const auto [r2, c2] = g.oracle_position(g.traverse(v, p).node);
        CHECK(std::abs(r - r2) + std::abs(c - c2) == 1);
      }
    }
  }
  SUBCASE("odd side has a unique center equidistant from all corners") {
    const NodeId center = g.node_at(2, 2);
    CHECK(g.oracle_position(center) == std::pair<int, int>{2, 2});
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (g.degree(v) != 2) continue;
      const auto [r, c] = g.oracle_position(v);
      CHECK(std::abs(r - 2) + std::abs(c - 2) == 4);
    }
  }
}

TEST_CASE("identical spec yields bit-identical serialization") {
  const auto spec = GridSpec::square(6, Orientation::Unoriented, 42);
  Grid a(spec), b(spec);
  CHECK(a.serialize() == b.serialize());

  Grid c(GridSpec::square(6, Orientation::Unoriented, 43));
  CHECK(a.serialize() != c.serialize());
}

TEST_CASE("grid spec JSON round trip") {
  const auto spec = GridSpec::rectangle(8, 4, Orientation::Unoriented, 17);
  const auto back = GridSpec::from_json(spec.to_json());
  CHECK(back.kind == GridSpec::Kind::Rectangle);
  CHECK(back.length == 8);
  CHECK(back.width == 4);
  CHECK(back.port_seed == 17);
  CHECK(back.orientation == Orientation::Unoriented);
}
