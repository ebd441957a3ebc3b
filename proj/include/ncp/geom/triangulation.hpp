#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ncp/geom/point.hpp"

namespace ncp::geom {

// Triangulation of a planar point set. For weighted inputs this is the
// regular (power) triangulation; sites whose power cell is empty are marked
// hidden and appear in no triangle. Triangles are CCW and tile the convex
// hull of the non-hidden sites.
struct Triangulation {
  std::vector<Point2> points;
  std::vector<double> weights;  // empty for the unweighted case
  std::vector<std::array<int, 3>> tris;
  // Neighbor triangle across the edge opposite corner k, -1 on the hull.
  std::vector<std::array<int, 3>> adj;
  std::vector<char> hidden;
  std::vector<std::vector<int>> neighbors;  // sorted vertex adjacency

  bool has_edge(int i, int j) const;
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::uint64_t>& packed_edges() const { return edges_; }

  // Called by the builder; also useful after manual edits in tests.
  void rebuild_edges();

 private:
  std::vector<std::uint64_t> edges_;  // sorted (min,max) packed pairs
};

// Delaunay triangulation. Requires >= 3 points, no exact duplicates, not all
// collinear; violations throw DegenerateInput. Cocircular ties are resolved
// by symbolic perturbation on the point index, so the result is a function
// of the input sequence alone.
Triangulation delaunay(const std::vector<Point2>& pts);

// Regular triangulation of weighted sites (weight = r^2 for circles).
// Coincident sites with equal weights throw DegenerateInput; a coincident
// site with smaller weight is hidden.
Triangulation regular_triangulation(const std::vector<Point2>& pts,
                                    const std::vector<double>& weights);

}  // namespace ncp::geom
