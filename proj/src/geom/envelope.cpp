#include "ncp/geom/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "ncp/errors.hpp"

namespace ncp::geom {

namespace {

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

// True when angle x lies strictly inside the CCW interval of given start and
// width (all in radians, width in (0, 2pi)).
bool in_interval(double x, double start, double width) {
  double rel = wrap_angle(x - start);
  return rel > 0.0 && rel < width;
}

struct Junction {
  Point2 pos;
  int ci = -1, cj = -1;
  double ang_i = 0.0, ang_j = 0.0;  // position angle on each circle
  bool tangency = false;

  double angle_on(int c) const { return c == ci ? ang_i : ang_j; }
  int other(int c) const { return c == ci ? cj : ci; }
};

struct Arc {
  int circle = -1;
  double a0 = 0.0, a1 = 0.0;  // CCW span, a1 > a0 (unwrapped)
  int j0 = -1, j1 = -1;       // junction ids at the endpoints, -1 = full circle
};

int segments_for(double span, double r, double tol) {
  double ratio = std::clamp(1.0 - tol / r, -1.0, 1.0);
  double theta = 2.0 * std::acos(ratio);
  theta = std::clamp(theta, 1e-4, kPi / 2.0);
  int m = static_cast<int>(std::ceil(span / theta));
  return std::clamp(m, 1, 8192);
}

// Interior radius that makes the polygonal fan of an arc match the true
// sector area exactly when both endpoints sit exactly on the circle. With m
// chords (m >= 2) and m-1 interior vertices at radius rho, the fan area is
// sin(psi)/2 * (2*r*rho + (m-2)*rho^2); equating to r^2*m*psi/2 gives the
// quadratic solved here. As psi -> 0 this tends to r.
double fan_exact_radius(double r, int m, double psi) {
  if (psi < 1e-9) return r;
  double q = m * psi / std::sin(psi);
  if (m == 2) return r * q / 2.0;
  return r * (std::sqrt(1.0 + (m - 2) * q) - 1.0) / (m - 2);
}

// Emit arc vertices: exact start junction when present, interior vertices at
// the fan-exact radius so the loop polygon area equals the true region area.
// The end junction belongs to the following arc.
void sample_arc(const Circle& c, const Arc& arc, const Point2* start_pos, double tol,
                std::vector<Point2>& out) {
  double span = arc.a1 - arc.a0;
  int m = segments_for(span, c.r, tol);
  double rho = c.r;
  if (start_pos != nullptr) {
    // Endpoints are exact junctions at radius r; need interior vertices to
    // compensate, so force at least one of them.
    m = std::max(m, 2);
    rho = fan_exact_radius(c.r, m, span / m);
    out.push_back(*start_pos);
  } else if (span / m > 1e-9) {
    // Full circle: every vertex is free, the uniform scheme is exact.
    rho = c.r * std::sqrt((span / m) / std::sin(span / m));
  }
  double psi = span / m;
  for (int k = start_pos != nullptr ? 1 : 0; k < m; ++k) {
    double a = arc.a0 + psi * k;
    out.push_back({c.center.x + rho * std::cos(a), c.center.y + rho * std::sin(a)});
  }
}

// Arc from `from` to `to` on circle c spanning `span` CCW, both endpoints
// exact and both emitted. Used by disk_hull where bridge tangent points bound
// the arcs.
void append_arc_exact(const Circle& c, const Point2& from, const Point2& to, double a0,
                      double span, double tol, std::vector<Point2>& out) {
  out.push_back(from);
  if (span > 1e-9 && c.r > 0.0) {
    int m = std::max(segments_for(span, c.r, tol), 2);
    double psi = span / m;
    double rho = fan_exact_radius(c.r, m, psi);
    for (int k = 1; k < m; ++k) {
      double a = a0 + psi * k;
      out.push_back({c.center.x + rho * std::cos(a), c.center.y + rho * std::sin(a)});
    }
    out.push_back(to);
  }
}

}  // namespace

Polygon circle_polygon(const Circle& c, double arc_tolerance) {
  if (!(c.r > 0.0)) throw DegenerateInput("circle_polygon: radius must be positive");
  double tol = arc_tolerance > 0.0 ? arc_tolerance : 1e-3 * c.r;
  int m = std::max(segments_for(kTwoPi, c.r, tol), 8);
  double psi = kTwoPi / m;
  double rho = c.r * std::sqrt(psi / std::sin(psi));
  Polygon p;
  p.pts.reserve(m);
  for (int k = 0; k < m; ++k) {
    double a = psi * k;
    p.pts.push_back({c.center.x + rho * std::cos(a), c.center.y + rho * std::sin(a)});
  }
  return p;
}

EnvelopeResult circle_union_envelope_full(const std::vector<Circle>& circles,
                                          double arc_tolerance, double tangency_tolerance) {
  EnvelopeResult result;
  std::size_t n = circles.size();
  if (n == 0) return result;

  double rmax = 0.0;
  for (const Circle& c : circles) rmax = std::max(rmax, c.r);
  if (rmax <= 0.0) return result;
  double arc_tol = arc_tolerance > 0.0 ? arc_tolerance : 1e-3 * rmax;
  double tang_tol = tangency_tolerance > 0.0 ? tangency_tolerance : 1e-9 * rmax;

  // Circles wholly inside another contribute no boundary. Equal duplicates
  // keep the lowest index.
  std::vector<char> alive(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(circles[i].r > 0.0)) {
      alive[i] = 0;
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !(circles[j].r > 0.0)) continue;
      double d = dist(circles[i].center, circles[j].center);
      bool covers = d <= circles[j].r - circles[i].r + tang_tol &&
                    (circles[j].r > circles[i].r || (circles[j].r == circles[i].r && j < i));
      if (covers) {
        alive[i] = 0;
        break;
      }
    }
  }

  // Pairwise junctions and coverage intervals.
  std::vector<Junction> junctions;
  struct Covered {
    double start, width;
  };
  std::vector<std::vector<Covered>> covered(n);
  std::vector<std::vector<int>> events(n);  // junction ids per circle
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!alive[j]) continue;
      const Circle& a = circles[i];
      const Circle& b = circles[j];
      double d = dist(a.center, b.center);
      if (d >= a.r + b.r + tang_tol) continue;  // disjoint
      Point2 u = (b.center - a.center) / d;
      if (d > a.r + b.r - tang_tol) {
        // External tangency: a single shared cusp point, no coverage.
        Point2 ta = a.center + u * a.r;
        Point2 tb = b.center - u * b.r;
        Junction t;
        t.pos = (ta + tb) * 0.5;
        t.ci = static_cast<int>(i);
        t.cj = static_cast<int>(j);
        t.ang_i = wrap_angle(std::atan2(u.y, u.x));
        t.ang_j = wrap_angle(std::atan2(-u.y, -u.x));
        t.tangency = true;
        events[i].push_back(static_cast<int>(junctions.size()));
        events[j].push_back(static_cast<int>(junctions.size()));
        junctions.push_back(t);
        continue;
      }
      // Internal tangency / containment: the smaller circle is already dead.
      if (d <= std::fabs(a.r - b.r) + tang_tol) continue;
      // Proper crossing.
      double da = (d * d + a.r * a.r - b.r * b.r) / (2.0 * d);
      double h2 = a.r * a.r - da * da;
      double h = std::sqrt(std::max(0.0, h2));
      Point2 v = perp(u);
      double base_i = std::atan2(u.y, u.x);
      double base_j = std::atan2(-u.y, -u.x);
      double phi_i = std::atan2(h, da);
      double phi_j = std::atan2(h, d - da);
      Junction j1, j2;
      j1.pos = a.center + u * da + v * h;
      j2.pos = a.center + u * da - v * h;
      j1.ci = j2.ci = static_cast<int>(i);
      j1.cj = j2.cj = static_cast<int>(j);
      j1.ang_i = wrap_angle(base_i + phi_i);
      j1.ang_j = wrap_angle(base_j - phi_j);
      j2.ang_i = wrap_angle(base_i - phi_i);
      j2.ang_j = wrap_angle(base_j + phi_j);
      int id1 = static_cast<int>(junctions.size());
      junctions.push_back(j1);
      int id2 = static_cast<int>(junctions.size());
      junctions.push_back(j2);
      events[i].push_back(id1);
      events[i].push_back(id2);
      events[j].push_back(id1);
      events[j].push_back(id2);
      // On i the span inside j runs CCW from j2 to j1; on j from j1 to j2.
      covered[i].push_back({j2.ang_i, wrap_angle(j1.ang_i - j2.ang_i)});
      covered[j].push_back({j1.ang_j, wrap_angle(j2.ang_j - j1.ang_j)});
    }
  }

  // Uncovered elementary arcs per circle.
  std::vector<Arc> arcs;
  std::map<std::pair<int, int>, int> start_of;  // (junction, circle) -> arc
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    auto& ev = events[i];
    if (ev.empty()) {
      Arc a;
      a.circle = static_cast<int>(i);
      a.a0 = 0.0;
      a.a1 = kTwoPi;
      arcs.push_back(a);
      continue;
    }
    std::sort(ev.begin(), ev.end(), [&](int x, int y) {
      double ax = junctions[x].angle_on(static_cast<int>(i));
      double ay = junctions[y].angle_on(static_cast<int>(i));
      if (ax != ay) return ax < ay;
      return x < y;
    });
    std::size_t m = ev.size();
    for (std::size_t k = 0; k < m; ++k) {
      int ja = ev[k];
      int jb = ev[(k + 1) % m];
      double a0 = junctions[ja].angle_on(static_cast<int>(i));
      double a1 = junctions[jb].angle_on(static_cast<int>(i));
      if (k + 1 == m) a1 += kTwoPi;
      if (a1 - a0 <= 1e-14) continue;  // coincident events
      double mid = wrap_angle(0.5 * (a0 + a1));
      bool cov = false;
      for (const Covered& cv : covered[i]) {
        if (in_interval(mid, cv.start, cv.width)) {
          cov = true;
          break;
        }
      }
      if (cov) continue;
      Arc a;
      a.circle = static_cast<int>(i);
      a.a0 = a0;
      a.a1 = a1;
      a.j0 = ja;
      a.j1 = jb;
      start_of[{ja, static_cast<int>(i)}] = static_cast<int>(arcs.size());
      arcs.push_back(a);
    }
  }

  // Walk loops.
  std::vector<char> visited(arcs.size(), 0);
  for (std::size_t s = 0; s < arcs.size(); ++s) {
    if (visited[s]) continue;
    if (arcs[s].j0 < 0) {
      // Isolated full circle.
      visited[s] = 1;
      EnvelopeLoop loop;
      sample_arc(circles[arcs[s].circle], arcs[s], nullptr, arc_tol, loop.boundary.pts);
      loop.contributors = {arcs[s].circle};
      loop.signed_area = loop.boundary.signed_area();
      result.union_area += loop.signed_area;
      if (loop.signed_area > 0.0) result.outer.push_back(static_cast<int>(result.loops.size()));
      result.loops.push_back(std::move(loop));
      continue;
    }
    std::vector<int> chain;
    int cur = static_cast<int>(s);
    bool closed = false;
    while (true) {
      if (visited[cur]) {
        closed = cur == static_cast<int>(s) && !chain.empty();
        break;
      }
      visited[cur] = 1;
      chain.push_back(cur);
      const Arc& a = arcs[cur];
      int other = junctions[a.j1].other(a.circle);
      auto it = start_of.find({a.j1, other});
      if (it == start_of.end()) break;
      cur = it->second;
      if (chain.size() > arcs.size()) break;
    }
    if (!closed) {
      ++result.abandoned_walks;
      continue;
    }
    EnvelopeLoop loop;
    for (int aid : chain) {
      const Arc& a = arcs[aid];
      sample_arc(circles[a.circle], a, &junctions[a.j0].pos, arc_tol, loop.boundary.pts);
      loop.contributors.push_back(a.circle);
    }
    std::sort(loop.contributors.begin(), loop.contributors.end());
    loop.contributors.erase(std::unique(loop.contributors.begin(), loop.contributors.end()),
                            loop.contributors.end());
    loop.signed_area = loop.boundary.signed_area();
    result.union_area += loop.signed_area;
    if (loop.signed_area > 0.0) result.outer.push_back(static_cast<int>(result.loops.size()));
    result.loops.push_back(std::move(loop));
  }
  return result;
}

std::vector<Polygon> circle_union_envelope(const std::vector<Circle>& circles,
                                           double arc_tolerance) {
  EnvelopeResult res = circle_union_envelope_full(circles, arc_tolerance);
  std::vector<Polygon> out;
  out.reserve(res.outer.size());
  for (int idx : res.outer) out.push_back(res.loops[idx].boundary);
  return out;
}

DiskHull disk_hull(const std::vector<Circle>& circles, double arc_tolerance) {
  DiskHull hull;
  double rmax = 0.0;
  for (const Circle& c : circles) rmax = std::max(rmax, c.r);
  double tol = arc_tolerance > 0.0 ? arc_tolerance : (rmax > 0.0 ? 1e-2 * rmax : 1e-2);

  struct Tagged {
    Point2 p;
    int tag;
  };
  std::vector<Tagged> pts;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const Circle& c = circles[i];
    if (c.r > 0.0) {
      Polygon ring = circle_polygon(c, tol);
      for (const Point2& p : ring.pts) pts.push_back({p, static_cast<int>(i)});
    } else {
      pts.push_back({c.center, static_cast<int>(i)});
    }
  }
  if (pts.empty()) throw DegenerateInput("disk_hull: no circles");

  std::sort(pts.begin(), pts.end(), [](const Tagged& a, const Tagged& b) {
    if (a.p.x != b.p.x) return a.p.x < b.p.x;
    if (a.p.y != b.p.y) return a.p.y < b.p.y;
    return a.tag < b.tag;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Tagged& a, const Tagged& b) { return a.p == b.p; }),
            pts.end());

  // Monotone chain over tagged points.
  std::size_t np = pts.size();
  std::vector<Tagged> h(2 * np);
  std::size_t k = 0;
  auto turn = [](const Tagged& a, const Tagged& b, const Tagged& c) {
    return cross(b.p - a.p, c.p - b.p);
  };
  for (std::size_t i = 0; i < np; ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  std::size_t lower = k + 1;
  for (std::size_t i = np - 1; i-- > 0;) {
    while (k >= lower && turn(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  if (k < 1) throw DegenerateInput("disk_hull: degenerate hull");
  h.resize(k > 1 ? k - 1 : k);

  // Hull disks in CCW order: collapse consecutive runs of the same tag, then
  // drop repeats (sampling jitter near short bridges can split a run).
  std::vector<int> runs;
  for (const Tagged& t : h) {
    if (runs.empty() || runs.back() != t.tag) runs.push_back(t.tag);
  }
  while (runs.size() > 1 && runs.front() == runs.back()) runs.pop_back();
  std::vector<char> seen(circles.size(), 0);
  for (int tag : runs) {
    if (!seen[tag]) {
      seen[tag] = 1;
      hull.order.push_back(tag);
    }
  }

  if (hull.order.size() < 2) {
    const Circle& only = circles[hull.order[0]];
    if (only.r > 0.0) hull.boundary = circle_polygon(only, tol);
    else hull.boundary.pts.push_back(only.center);
    return hull;
  }

  std::size_t m = hull.order.size();
  for (std::size_t t = 0; t < m; ++t) {
    int i = hull.order[t];
    int j = hull.order[(t + 1) % m];
    const Circle& a = circles[i];
    const Circle& b = circles[j];
    double d = dist(a.center, b.center);
    DiskHull::Bridge br;
    br.from = i;
    br.to = j;
    if (d > 0.0) {
      Point2 u = (b.center - a.center) / d;
      double alpha = std::clamp((a.r - b.r) / d, -1.0, 1.0);
      double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
      Point2 nrm = u * alpha - perp(u) * beta;  // outward normal, hull side
      br.a = a.center + nrm * a.r;
      br.b = b.center + nrm * b.r;
    } else {
      br.a = a.center;
      br.b = b.center;
    }
    hull.bridges.push_back(br);
  }

  // The boundary alternates bridges with the arc each disk exposes between
  // its incoming and outgoing tangent points; exact endpoints plus fan-exact
  // interiors make the polygon area equal the true hull area.
  for (std::size_t t = 0; t < m; ++t) {
    const Circle& c = circles[hull.order[t]];
    const Point2& in = hull.bridges[(t + m - 1) % m].b;
    const Point2& out = hull.bridges[t].a;
    if (!(c.r > 0.0)) {
      hull.boundary.pts.push_back(c.center);
      continue;
    }
    double a0 = std::atan2(in.y - c.center.y, in.x - c.center.x);
    double a1 = std::atan2(out.y - c.center.y, out.x - c.center.x);
    double span = a1 - a0;
    while (span < 0.0) span += kTwoPi;
    while (span >= kTwoPi) span -= kTwoPi;
    append_arc_exact(c, in, out, a0, span, tol, hull.boundary.pts);
  }
  return hull;
}

}  // namespace ncp::geom
