#pragma once

#include <cstdint>
#include <vector>

#include "ncp/dataset.hpp"
#include "ncp/graph.hpp"

namespace ncp {

enum class ProjectionKind { kExternalEmbedding, kPca, kMds };

struct ProjectionMethod {
  ProjectionKind kind = ProjectionKind::kPca;
};

const char* projection_name(ProjectionKind kind);

// 2D coordinates, one per item. PCA projects onto the top-2 principal
// components; MDS is classical metric MDS on the Euclidean feature distance
// matrix; external-embedding passes the dataset embedding through.
std::vector<geom::Point2> project(const Dataset& ds, const ProjectionMethod& method,
                                  std::uint64_t seed);

// Delaunay triangulation of the embedding as a planar graph. Exact duplicate
// coordinates are jittered by a deterministic per-index offset of magnitude
// 1e-9 x bounding-box diagonal first. n = 1 gives an edgeless graph, n = 2 a
// single edge; collinear inputs propagate DegenerateInput.
PlanarGraph init_planar_graph(const std::vector<geom::Point2>& embedding);

// Mean Jaccard overlap of hop-neighborhoods (same label) against feature-kNN
// sets with k_i = |neighborhood(i)|. Nodes with empty neighborhoods
// contribute 0; their count is written to empty_gamma_count when given.
double np_degree_k(const PlanarGraph& g, const Dataset& ds, int hop,
                   int* empty_gamma_count = nullptr);
double np_degree(const PlanarGraph& g, const Dataset& ds);

struct ProjectionChoice {
  ProjectionMethod method;
  std::vector<geom::Point2> embedding;
  double np = 0.0;
};

// Evaluates np_degree per candidate and returns the argmax; ties keep the
// earliest candidate.
ProjectionChoice select_projection(const Dataset& ds,
                                   const std::vector<ProjectionMethod>& candidates,
                                   std::uint64_t seed);

}  // namespace ncp
