#pragma once

#include <vector>

#include "ncp/geom/point.hpp"
#include "ncp/geom/polygon.hpp"

namespace ncp::geom {

// Boundary loop of a union of disks. Outer boundaries are CCW (positive
// area), gap and hole boundaries are CW (negative area). Externally tangent
// circles produce a cusp vertex shared by both arcs, so a loop polygon may
// be pinched.
struct EnvelopeLoop {
  Polygon boundary;
  std::vector<int> contributors;  // circle indices with at least one arc here
  double signed_area = 0.0;
};

struct EnvelopeResult {
  std::vector<EnvelopeLoop> loops;
  std::vector<int> outer;    // indices of loops with positive signed area
  double union_area = 0.0;   // sum of signed loop areas = area of the disk union
  int abandoned_walks = 0;   // loops dropped at unresolvable junctions (degenerate input)
};

// Union boundary of a set of circles via an arc walk. Negative tolerances
// select the defaults: arc_tolerance = 1e-3 * max radius (max sagitta of the
// polygonized arcs), tangency_tolerance = 1e-9 * max radius (distance slack
// under which two circles are treated as tangent and their boundaries joined
// at the cusp). Interior vertices are pushed slightly off the circle so each
// full angular step contributes its exact sector area; a full circle
// polygonizes to exactly pi r^2.
EnvelopeResult circle_union_envelope_full(const std::vector<Circle>& circles,
                                          double arc_tolerance = -1.0,
                                          double tangency_tolerance = -1.0);

// Outer boundary polygons only, one per connected component.
std::vector<Polygon> circle_union_envelope(const std::vector<Circle>& circles,
                                           double arc_tolerance = -1.0);

// Area-exact polygonization of a single circle (requires r > 0).
Polygon circle_polygon(const Circle& c, double arc_tolerance);

// Convex hull of a set of disks, from finely sampled boundaries. `order`
// lists the disks touching the hull in CCW order; bridges carry the exact
// outer tangent segment between consecutive hull disks.
struct DiskHull {
  Polygon boundary;
  std::vector<int> order;
  struct Bridge {
    int from = -1;
    int to = -1;
    Point2 a, b;  // tangent points on `from` and `to`
  };
  std::vector<Bridge> bridges;
};

DiskHull disk_hull(const std::vector<Circle>& circles, double arc_tolerance = -1.0);

}  // namespace ncp::geom
