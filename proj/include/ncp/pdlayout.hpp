#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ncp/errors.hpp"
#include "ncp/geom/polygon.hpp"
#include "ncp/graph.hpp"

namespace ncp {

struct StageConfig {
  double alpha = 0.2;
  int max_iterations = 100;
  // Pair gap may not fall below -overlap_tolerance * s.
  double overlap_tolerance = 1e-6;
  double capacity_tolerance = 0.01;
  int kmeans_k_lo = 2;
  int kmeans_k_hi = 10;
  int kmeans_restarts = 10;
  std::uint64_t seed = 0;
};

// Mutable layout being optimized. Radii are always derived as s * weights[i]
// so the coupling constraint holds exactly by construction; regions holds the
// per-cluster sub-polygons once partition_and_fit has run.
struct LayoutState {
  std::vector<geom::Point2> positions;
  std::vector<double> weights;
  double s = 1.0;
  geom::Point2 center{0.0, 0.0};
  geom::Polygon bounds;
  PlanarGraph graph;
  std::vector<int> layout_labels;
  std::vector<geom::Polygon> regions;
  std::vector<std::string> notes;

  // Audit trail: s after every lloyd_step (monotone when no empty-cell
  // recovery fired), and preserve_edges acceptance stats (worst accepted
  // delta must stay < 0).
  std::vector<double> s_history;
  int preserve_accepted = 0;
  double preserve_worst_delta = -std::numeric_limits<double>::infinity();

  double radius(int i) const { return s * weights[i]; }
  int cluster_count() const;
};

// NonConvergence that carries the best state reached so callers can persist
// partial results.
struct LayoutNonConvergence : NonConvergence {
  LayoutState best;
  LayoutNonConvergence(const std::string& msg, LayoutState state)
      : NonConvergence(msg), best(std::move(state)) {}
};

// State with positions from the stage-1 graph, s = 1, and square bounds
// centered on the origin with area 4 * sum(pi * w_i^2).
LayoutState make_stage2_state(const PlanarGraph& g, const std::vector<double>& weights);

// F_p' + alpha * F_c: edge lengths (each unordered edge once) plus center
// distances, both divided by s.
double objective_stage2(const LayoutState& st, const StageConfig& cfg);

// k-means over positions, k chosen by mean silhouette; fills layout_labels.
void cluster_positions(LayoutState& st, const StageConfig& cfg);

// Capacity partition of bounds with per-cluster area fractions proportional
// to sum of w_i^2, then a similarity-transform fit of every cluster into its
// region, then s restored to the largest feasible value.
void partition_and_fit(LayoutState& st, const StageConfig& cfg);

// One Lloyd iteration per cluster (concurrently): move circles toward their
// power-cell centroids (clamped inside the eroded cell, which preserves
// non-overlap) and grow s by the largest factor that keeps containment and
// non-overlap. Never decreases s.
void lloyd_step(LayoutState& st, const StageConfig& cfg);

// Restore stage-1 edges missing from the regular triangulation of the
// current circles by pulling the offending endpoint toward the blocking
// triangle's weighted circumcircle center; step halved until the objective
// strictly decreases and constraints hold, else the move is skipped.
void preserve_edges(LayoutState& st, const StageConfig& cfg);

// cluster_positions, partition_and_fit, then {lloyd_step; preserve_edges}
// until s growth stays below 0.1% for 5 consecutive iterations or
// max_iterations.
LayoutState run_stage2(LayoutState st, const StageConfig& cfg);

// Smallest pair gap (||p_i - p_j|| - r_i - r_j) over all pairs; +inf for
// fewer than two circles. Shared audit helper.
double min_pair_gap(const std::vector<geom::Point2>& positions, const std::vector<double>& radii);

}  // namespace ncp
