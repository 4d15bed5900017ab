#include "griddisp/grid.hpp"

#include <algorithm>

#include "griddisp/rng.hpp"
#include "json.hpp"

namespace griddisp {

namespace {

// Cyclic reference order of directions used for canonical port numbering:
// W, S, E, N restricted to the edges actually present.
constexpr std::array<Dir, 4> kPortOrder{Dir::W, Dir::S, Dir::E, Dir::N};

}  // namespace

GridSpec GridSpec::square(int side, Orientation o, uint64_t seed) {
  GridSpec s;
  s.kind = Kind::Square;
  s.side = side;
  s.orientation = o;
  s.port_seed = seed;
  s.validate();
  return s;
}

GridSpec GridSpec::rectangle(int length, int width, Orientation o, uint64_t seed) {
  GridSpec s;
  s.kind = Kind::Rectangle;
  s.length = length;
  s.width = width;
  s.orientation = o;
  s.port_seed = seed;
  s.validate();
  return s;
}

void GridSpec::validate() const {
  if (kind == Kind::Square) {
    if (side < 3) throw ConfigError("grid: square side must be >= 3");
  } else {
    if (width < 3) throw ConfigError("grid: rectangle width must be >= 3");
    if (length < width) throw ConfigError("grid: rectangle requires length >= width");
  }
}

std::string GridSpec::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind == Kind::Square ? "square" : "rectangle";
  if (kind == Kind::Square) {
    j["side"] = side;
  } else {
    j["length"] = length;
    j["width"] = width;
  }
  j["orientation"] = orientation == Orientation::Oriented ? "oriented" : "unoriented";
  j["port_seed"] = port_seed;
  return j.dump();
}

GridSpec GridSpec::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  GridSpec s;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "square") {
    s.kind = Kind::Square;
    s.side = j.at("side").get<int>();
  } else if (kind == "rectangle") {
    s.kind = Kind::Rectangle;
    s.length = j.at("length").get<int>();
    s.width = j.at("width").get<int>();
  } else {
    throw ConfigError("grid: unknown kind '" + kind + "'");
  }
  const std::string o = j.at("orientation").get<std::string>();
  if (o == "oriented") {
    s.orientation = Orientation::Oriented;
  } else if (o == "unoriented") {
    s.orientation = Orientation::Unoriented;
  } else {
    throw ConfigError("grid: unknown orientation '" + o + "'");
  }
  s.port_seed = j.value("port_seed", uint64_t{0});
  s.validate();
  return s;
}

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  spec.validate();
  cols_ = spec.cols();
  rows_ = spec.rows();
  oriented_ = spec.orientation == Orientation::Oriented;
  nodes_.resize(size_t(node_count()));

  auto neighbor = [&](int r, int c, Dir d) -> NodeId {
    switch (d) {
      case Dir::N: return r > 0 ? node_at(r - 1, c) : -1;
      case Dir::S: return r < rows_ - 1 ? node_at(r + 1, c) : -1;
      case Dir::W: return c > 0 ? node_at(r, c - 1) : -1;
      default: return c < cols_ - 1 ? node_at(r, c + 1) : -1;
    }
  };

  // First pass: assign a direction to every port slot.
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const NodeId v = node_at(r, c);
      Node& nd = nodes_[v];
      std::array<Dir, 4> present{};
      int deg = 0;
      for (Dir d : kPortOrder) {
        if (neighbor(r, c, d) >= 0) present[deg++] = d;
      }
      nd.degree = deg;
      if (oriented_) {
        for (int i = 0; i < deg; ++i) nd.dir_of_port[i] = uint8_t(present[i]);
      } else {
        // Each node draws its own permutation keyed by (port_seed, node id),
        // so port numbers at the two ends of an edge are unrelated.
        std::array<int, 4> perm{0, 1, 2, 3};
        SplitMix rng(mix_key(spec.port_seed, uint64_t(v)));
        for (int i = deg - 1; i > 0; --i) {
          const int j = int(rng.below(uint64_t(i) + 1));
          std::swap(perm[i], perm[j]);
        }
        for (int i = 0; i < deg; ++i) nd.dir_of_port[i] = uint8_t(present[perm[i]]);
      }
      for (int i = 0; i < deg; ++i) {
        nd.nbr[i] = neighbor(r, c, Dir(nd.dir_of_port[i]));
        nd.port_of_dir[nd.dir_of_port[i]] = uint8_t(i + 1);
      }
    }
  }

  // Second pass: record the opposite endpoint's port number for every edge.
  for (NodeId v = 0; v < NodeId(node_count()); ++v) {
    Node& nd = nodes_[v];
    for (int i = 0; i < nd.degree; ++i) {
      const NodeId u = nd.nbr[i];
      const Dir back = opposite(Dir(nd.dir_of_port[i]));
      nd.entry[i] = nodes_[u].port_of_dir[uint8_t(back)];
    }
  }
}

Grid::Hop Grid::traverse(NodeId v, int port) const {
  const Node& nd = nodes_[v];
  if (port < 1 || port > nd.degree) {
    throw std::out_of_range("traverse: port " + std::to_string(port) + " out of range at node " +
                            std::to_string(v));
  }
  return Hop{nd.nbr[port - 1], int(nd.entry[port - 1])};
}

NodeProfile Grid::profile(NodeId v) const {
  const Node& nd = nodes_[v];
  NodeProfile p;
  p.degree = nd.degree;
  p.cls = classify_degree(nd.degree);
  p.oriented = oriented_;
  if (oriented_) {
    for (int d = 0; d < 4; ++d) p.port_of_dir[d] = nd.port_of_dir[d];
  }
  return p;
}

std::pair<int, int> Grid::oracle_position(NodeId v) const {
  return {int(v / cols_), int(v % cols_)};
}

Dir Grid::oracle_dir_of_port(NodeId v, int port) const {
  const Node& nd = nodes_[v];
  if (port < 1 || port > nd.degree) throw std::out_of_range("oracle_dir_of_port: bad port");
  return Dir(nd.dir_of_port[port - 1]);
}

std::string Grid::serialize() const {
  nlohmann::ordered_json j;
  j["length"] = cols_;
  j["width"] = rows_;
  j["orientation"] = oriented_ ? "oriented" : "unoriented";
  j["port_seed"] = spec_.port_seed;
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (NodeId v = 0; v < NodeId(node_count()); ++v) {
    const Node& nd = nodes_[v];
    nlohmann::ordered_json ports = nlohmann::ordered_json::array();
    for (int i = 0; i < nd.degree; ++i) {
      ports.push_back({nd.nbr[i], int(nd.entry[i])});
    }
    nodes.push_back(std::move(ports));
  }
  j["nodes"] = std::move(nodes);
  return j.dump();
}

}  // namespace griddisp
