#include "ncp/geom/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncp/errors.hpp"
#include "ncp/geom/predicates.hpp"

namespace ncp::geom {

double Polygon::signed_area() const {
  if (pts.size() < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % pts.size()];
    s += cross(a, b);
  }
  return 0.5 * s;
}

Point2 Polygon::centroid() const {
  if (pts.empty()) return {0.0, 0.0};
  if (pts.size() < 3) {
    Point2 m{0.0, 0.0};
    for (const Point2& p : pts) m += p;
    return m / static_cast<double>(pts.size());
  }
  double a6 = 0.0;
  Point2 c{0.0, 0.0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2& p = pts[i];
    const Point2& q = pts[(i + 1) % pts.size()];
    double cr = cross(p, q);
    a6 += cr;
    c += (p + q) * cr;
  }
  if (a6 == 0.0) {
    Point2 m{0.0, 0.0};
    for (const Point2& p : pts) m += p;
    return m / static_cast<double>(pts.size());
  }
  return c / (3.0 * a6);
}

bool Polygon::contains(const Point2& q) const {
  if (pts.size() < 3) return false;
  // Crossing number with the half-open rule; boundary points resolve either
  // way, callers needing exact margins use signed_distance.
  bool inside = false;
  std::size_t n = pts.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = pts[i];
    const Point2& b = pts[j];
    if ((a.y > q.y) != (b.y > q.y)) {
      double xint = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (q.x < xint) inside = !inside;
    }
  }
  return inside;
}

double Polygon::distance_to_boundary(const Point2& q) const {
  double best = std::numeric_limits<double>::infinity();
  std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % n];
    Point2 ab = b - a;
    double len2 = norm2(ab);
    double t = len2 > 0.0 ? std::clamp(dot(q - a, ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, dist(q, a + ab * t));
  }
  return best;
}

double Polygon::signed_distance(const Point2& q) const {
  double d = distance_to_boundary(q);
  return contains(q) ? d : -d;
}

bool Polygon::is_convex(double rel_tol) const {
  if (pts.size() < 3) return false;
  double scale2 = 0.0;
  std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) scale2 = std::max(scale2, dist2(pts[i], pts[(i + 1) % n]));
  double tol = rel_tol * scale2;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % n];
    const Point2& c = pts[(i + 2) % n];
    if (cross(b - a, c - b) < -tol) return false;
  }
  return true;
}

Polygon Polygon::clip_halfplane(const Point2& n, double c) const {
  Polygon out;
  std::size_t m = pts.size();
  if (m == 0) return out;
  out.pts.reserve(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % m];
    double da = dot(n, a) - c;
    double db = dot(n, b) - c;
    if (da <= 0.0) out.pts.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      double t = da / (da - db);
      out.pts.push_back(a + (b - a) * t);
    }
  }
  // Drop near-coincident consecutive vertices produced by grazing clips.
  if (!out.pts.empty()) {
    Point2 lo, hi;
    out.bounding_box(lo, hi);
    double eps = 1e-12 * std::max({hi.x - lo.x, hi.y - lo.y, 1e-300});
    std::vector<Point2> clean;
    clean.reserve(out.pts.size());
    for (const Point2& p : out.pts) {
      if (clean.empty() || dist(clean.back(), p) > eps) clean.push_back(p);
    }
    while (clean.size() > 1 && dist(clean.front(), clean.back()) <= eps) clean.pop_back();
    out.pts = std::move(clean);
  }
  if (out.pts.size() < 3) out.pts.clear();
  return out;
}

void Polygon::central_moments(double& ixx, double& iyy, double& ixy) const {
  double sxx = 0.0, syy = 0.0, sxy = 0.0, a6 = 0.0;
  std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = pts[i];
    const Point2& q = pts[(i + 1) % n];
    double cr = cross(p, q);
    a6 += cr;
    sxx += (p.x * p.x + p.x * q.x + q.x * q.x) * cr;
    syy += (p.y * p.y + p.y * q.y + q.y * q.y) * cr;
    sxy += (2.0 * p.x * p.y + p.x * q.y + q.x * p.y + 2.0 * q.x * q.y) * cr;
  }
  double area = 0.5 * a6;
  if (area == 0.0) {
    ixx = iyy = ixy = 0.0;
    return;
  }
  Point2 c = centroid();
  ixx = sxx / 12.0 - area * c.x * c.x;
  iyy = syy / 12.0 - area * c.y * c.y;
  ixy = sxy / 24.0 - area * c.x * c.y;
}

double Polygon::principal_angle() const {
  double ixx, iyy, ixy;
  central_moments(ixx, iyy, ixy);
  return 0.5 * std::atan2(2.0 * ixy, ixx - iyy);
}

void Polygon::bounding_box(Point2& lo, Point2& hi) const {
  lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  hi = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point2& p : pts) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
}

double Polygon::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, dist2(pts[i], pts[j]));
    }
  }
  return std::sqrt(best);
}

Polygon make_rect(double x0, double y0, double x1, double y1) {
  Polygon p;
  p.pts = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  return p;
}

Polygon make_square_centered(const Point2& c, double half) {
  return make_rect(c.x - half, c.y - half, c.x + half, c.y + half);
}

Polygon convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DegenerateInput("convex_hull: fewer than 3 distinct points");
  std::size_t n = pts.size();
  std::vector<Point2> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && orient2d(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && orient2d(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw DegenerateInput("convex_hull: input is collinear");
  return Polygon(std::move(h));
}

double max_step_inside(const Polygon& poly, const Point2& a, const Point2& b, double margin) {
  // Convex region as intersection of halfplanes dot(n, q) <= c - margin*|n|.
  double tmax = 1.0;
  std::size_t n = poly.pts.size();
  Point2 d = b - a;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly.pts[i];
    const Point2& q = poly.pts[(i + 1) % n];
    Point2 edge = q - p;
    Point2 nrm = {edge.y, -edge.x};  // outward for CCW
    double len = norm(nrm);
    if (len == 0.0) continue;
    nrm = nrm / len;
    double c = dot(nrm, p) - margin;
    double fa = dot(nrm, a) - c;
    if (fa > 0.0) return 0.0;  // start already violates
    double fd = dot(nrm, d);
    if (fd <= 0.0) continue;  // moving away from this edge
    tmax = std::min(tmax, -fa / fd);
  }
  return std::max(0.0, tmax);
}

}  // namespace ncp::geom
