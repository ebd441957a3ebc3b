#pragma once

#include <vector>

#include "ncp/geom/point.hpp"

namespace ncp::geom {

// Simple polygon, vertices in CCW order for positive area. Used both for
// convex clip regions (power cells, bounds) and for envelope loops, which
// may be nonconvex or pinched at tangency cusps.
struct Polygon {
  std::vector<Point2> pts;

  Polygon() = default;
  explicit Polygon(std::vector<Point2> p) : pts(std::move(p)) {}

  bool empty() const { return pts.size() < 3; }
  double signed_area() const;
  double area() const { return std::fabs(signed_area()); }
  Point2 centroid() const;
  bool contains(const Point2& q) const;
  // Positive inside, negative outside, zero on the boundary.
  double signed_distance(const Point2& q) const;
  double distance_to_boundary(const Point2& q) const;
  bool is_convex(double rel_tol = 1e-12) const;
  // Keep the side dot(n, q) <= c. Result of clipping a convex CCW polygon is
  // convex CCW (possibly empty).
  Polygon clip_halfplane(const Point2& n, double c) const;
  // Second moments about the centroid and the principal axis direction.
  void central_moments(double& ixx, double& iyy, double& ixy) const;
  double principal_angle() const;
  void bounding_box(Point2& lo, Point2& hi) const;
  double diameter() const;
};

Polygon make_rect(double x0, double y0, double x1, double y1);
Polygon make_square_centered(const Point2& c, double half);

// Convex hull via monotone chain, CCW, collinear points dropped.
// Throws DegenerateInput when all points are collinear.
Polygon convex_hull(std::vector<Point2> pts);

// Largest t in [0,1] such that a + t*(b-a) stays inside the polygon eroded
// by margin (every edge pushed inward by margin). Requires a feasible start;
// convex polygons only.
double max_step_inside(const Polygon& poly, const Point2& a, const Point2& b, double margin);

}  // namespace ncp::geom
