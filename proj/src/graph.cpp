#include "ncp/graph.hpp"

#include <algorithm>
#include <string>

#include "ncp/errors.hpp"

namespace ncp {

void PlanarGraph::build_from_pairs(const std::vector<std::pair<int, int>>& pairs) {
  int n = node_count();
  edges_.clear();
  edges_.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw IndexOutOfRange("graph edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") out of range for " + std::to_string(n) + " nodes");
    }
    if (a == b) throw ValidationError("graph edge may not be a self-loop");
    if (a > b) std::swap(a, b);
    edges_.emplace_back(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  adjacency_.assign(n, {});
  for (auto [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

PlanarGraph PlanarGraph::from_triangulation(const geom::Triangulation& tri) {
  PlanarGraph g;
  g.positions_ = tri.points;
  std::vector<std::pair<int, int>> pairs;
  for (const auto& t : tri.tris) {
    for (int k = 0; k < 3; ++k) pairs.emplace_back(t[k], t[(k + 1) % 3]);
  }
  g.build_from_pairs(pairs);
  return g;
}

PlanarGraph PlanarGraph::from_edges(std::vector<geom::Point2> positions,
                                    const std::vector<std::pair<int, int>>& edges) {
  PlanarGraph g;
  g.positions_ = std::move(positions);
  g.build_from_pairs(edges);
  return g;
}

const std::vector<int>& PlanarGraph::neighbors(int i) const {
  if (i < 0 || i >= node_count()) {
    throw IndexOutOfRange("graph node " + std::to_string(i) + " out of range");
  }
  return adjacency_[i];
}

bool PlanarGraph::has_edge(int i, int j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

NeighborSet same_label_khop(const PlanarGraph& g, int i, int k, const std::vector<int>& labels) {
  if (i < 0 || i >= g.node_count()) {
    throw IndexOutOfRange("same_label_khop: node " + std::to_string(i) + " out of range");
  }
  if (k != 1 && k != 2) throw ValidationError("same_label_khop: k must be 1 or 2");
  if (static_cast<int>(labels.size()) != g.node_count()) {
    throw ValidationError("same_label_khop: labels size mismatch");
  }
  NeighborSet out;
  out.anchor = i;
  std::vector<int> reach = g.neighbors(i);
  if (k == 2) {
    for (int j : g.neighbors(i)) {
      const auto& nj = g.neighbors(j);
      reach.insert(reach.end(), nj.begin(), nj.end());
    }
  }
  std::sort(reach.begin(), reach.end());
  reach.erase(std::unique(reach.begin(), reach.end()), reach.end());
  for (int j : reach) {
    if (j != i && labels[j] == labels[i]) out.members.push_back(j);
  }
  return out;
}

}  // namespace ncp
