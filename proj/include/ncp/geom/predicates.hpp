#pragma once

#include "ncp/geom/point.hpp"

namespace ncp::geom {

// Robust orientation and incircle predicates: a floating-point filter with a
// forward error bound, falling back to exact expansion arithmetic when the
// filter cannot certify the sign. The exact path makes the sign of a zero
// determinant reliable, which the triangulation code depends on.

// > 0 iff c is strictly left of the directed line a->b, < 0 strictly right,
// 0 iff exactly collinear.
double orient2d(const Point2& a, const Point2& b, const Point2& c);

// > 0 iff d is strictly inside the circumcircle of the CCW triangle abc.
double incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// Weighted (power) incircle. Sites are (point, weight) with weight = r^2 for
// circles. > 0 iff site d conflicts with the power circumcircle of the CCW
// triangle abc, i.e. pow(d, orthocircle(a,b,c)) < 0. With all weights zero
// this is exactly incircle().
double incircle_power(const Point2& a, double wa, const Point2& b, double wb, const Point2& c,
                      double wc, const Point2& d, double wd);

// Same predicate with exact zeros resolved by symbolic perturbation of the
// lifted weights, ordered by the original site index (lower index dominates).
// ia..id must be pairwise distinct. Returns +1 or -1, never 0, provided abc
// is a genuine triangle (nonzero orientation).
int incircle_power_perturbed(const Point2& a, double wa, int ia, const Point2& b, double wb, int ib,
                             const Point2& c, double wc, int ic, const Point2& d, double wd, int id);

}  // namespace ncp::geom
