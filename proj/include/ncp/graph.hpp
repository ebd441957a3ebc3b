#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ncp/geom/point.hpp"
#include "ncp/geom/triangulation.hpp"

namespace ncp {

// Neighborhood of one node: anchor never appears in members; members sorted
// ascending for deterministic iteration and set algebra.
struct NeighborSet {
  int anchor = -1;
  std::vector<int> members;
};

// Straight-line planar graph: the stage-1 edge set held fixed through the
// pipeline. Adjacency lists are sorted; the edge list stores each unordered
// pair once with first < second. Immutable after construction.
class PlanarGraph {
 public:
  PlanarGraph() = default;

  static PlanarGraph from_triangulation(const geom::Triangulation& tri);
  // Test/plumbing constructor from an explicit edge list (pairs deduplicated,
  // self-loops rejected).
  static PlanarGraph from_edges(std::vector<geom::Point2> positions,
                                const std::vector<std::pair<int, int>>& edges);

  int node_count() const { return static_cast<int>(positions_.size()); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<geom::Point2>& positions() const { return positions_; }
  const std::vector<int>& neighbors(int i) const;
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int i, int j) const;

 private:
  std::vector<geom::Point2> positions_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::pair<int, int>> edges_;

  void build_from_pairs(const std::vector<std::pair<int, int>>& pairs);
};

// Same-label hop neighborhood: k = 1 gives the 1-hop neighbors sharing
// labels[i]; k = 2 gives all nodes within graph distance 2 sharing labels[i].
// Paths are label-agnostic; only the endpoint label is filtered.
NeighborSet same_label_khop(const PlanarGraph& g, int i, int k, const std::vector<int>& labels);

}  // namespace ncp
