#pragma once

#include <vector>

#include "ncp/geom/point.hpp"
#include "ncp/geom/polygon.hpp"

namespace ncp::geom {

struct PowerCell {
  int site = -1;
  Polygon boundary;  // empty when the site's cell is empty or fully clipped
  bool empty() const { return boundary.empty(); }
};

// Power diagram of weighted sites clipped to a convex region. Every site gets
// a cell entry; empty cells are reported, never dropped. Coincident sites
// with equal weights throw DegenerateInput.
std::vector<PowerCell> power_cells(const std::vector<Point2>& sites,
                                   const std::vector<double>& weights, const Polygon& bounds);

// Circle form: weight = r^2.
std::vector<PowerCell> power_diagram(const std::vector<Circle>& circles, const Polygon& bounds);

// Circle orthogonal to three circles: equal power distance to all three.
// Collinear centers throw DegenerateInput. When the common power is negative
// the orthogonal circle is imaginary; the returned radius is then 0 and only
// the center is meaningful.
Circle weighted_circumcircle(const Circle& a, const Circle& b, const Circle& c);

struct CapacityOptions {
  double tolerance = 0.01;  // max relative cell-area error
  int max_iterations = 200;
};

// Partitions a convex region into cells whose areas match the requested
// fractions, by fixed-point iteration on power weights. Fractions must be
// positive and sum to 1 within 1e-9; seeds must be distinct and strictly
// inside. Returns one convex polygon per seed, in input order.
std::vector<Polygon> capacity_partition(const Polygon& bounds, const std::vector<Point2>& seeds,
                                        const std::vector<double>& fractions,
                                        const CapacityOptions& opts = {});

}  // namespace ncp::geom
