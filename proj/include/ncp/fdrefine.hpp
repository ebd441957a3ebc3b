#pragma once

#include <cstdint>
#include <vector>

#include "ncp/geom/point.hpp"
#include "ncp/pdlayout.hpp"

namespace ncp {

struct RefineConfig {
  double alpha = 0.2;
  double beta = 1.0;
  int iterations = 1250;
  // Step size starts at initial_velocity_scale x mean radius and anneals
  // linearly to zero.
  double initial_velocity_scale = 0.05;
  double overlap_tolerance = 1e-6;
  int target_refresh = 25;
  std::uint64_t seed = 0;
};

// Pull target for one boundary circle: the cluster hull bridge spanning its
// angular gap touches neighbor circles at a and b; m is their midpoint and q
// the point of this circle nearest to m.
struct ConvexityTarget {
  int circle = -1;
  geom::Point2 a{0.0, 0.0};
  geom::Point2 b{0.0, 0.0};
  geom::Point2 m{0.0, 0.0};
  geom::Point2 q{0.0, 0.0};
};

// Indices of circles contributing an arc to their label-cluster's envelope
// outer ring, sorted ascending. Clusters of one or two circles contribute all
// their members.
std::vector<int> detect_boundary(const LayoutState& st, const std::vector<int>& labels);

// Targets for boundary circles not touching their cluster's disk hull;
// clusters with fewer than 3 circles or a degenerate hull are skipped.
std::vector<ConvexityTarget> convexity_targets(const LayoutState& st,
                                               const std::vector<int>& labels,
                                               const std::vector<int>& delta);

// F_p' + alpha F_c + beta F_v with F_v = sum over targets of ||q - m||
// (not divided by s).
double objective_stage3(const LayoutState& st, const std::vector<ConvexityTarget>& targets,
                        const RefineConfig& cfg);

// Negative gradient per circle; target anchors are frozen within a step and
// non-smooth points contribute zero.
std::vector<geom::Point2> assemble_forces(const LayoutState& st,
                                          const std::vector<ConvexityTarget>& targets,
                                          const RefineConfig& cfg);

// Position-based penetration projection: per pass, push each overlapping pair
// apart by half the penetration each (deepest first), up to 50 passes; then
// shrink s by 0.5% and retry, up to 10 times, else LayoutNonConvergence.
void resolve_overlaps(LayoutState& st, const RefineConfig& cfg);

// Annealed force simulation; recomputes boundary targets every
// target_refresh steps and returns the best state seen by objective_stage3
// (never worse than the input).
LayoutState run_stage3(LayoutState st, const std::vector<int>& labels, const RefineConfig& cfg);

}  // namespace ncp
