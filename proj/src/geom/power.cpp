#include "ncp/geom/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncp/errors.hpp"
#include "ncp/geom/predicates.hpp"
#include "ncp/geom/triangulation.hpp"

namespace ncp::geom {

namespace {

// Halfplane where site i beats site j: 2(pj-pi).q <= |pj|^2 - |pi|^2 - (wj - wi).
bool radical_halfplane(const Point2& pi, double wi, const Point2& pj, double wj, Point2& n,
                       double& c) {
  n = (pj - pi) * 2.0;
  if (n.x == 0.0 && n.y == 0.0) return false;  // coincident centers
  c = norm2(pj) - norm2(pi) - (wj - wi);
  return true;
}

Polygon clip_cell(const Polygon& bounds, const std::vector<Point2>& sites,
                  const std::vector<double>& weights, int i, const std::vector<int>& others) {
  Polygon cell = bounds;
  for (int j : others) {
    if (cell.empty()) break;
    Point2 n;
    double c;
    if (!radical_halfplane(sites[i], weights[i], sites[j], weights[j], n, c)) {
      if (weights[j] > weights[i]) return Polygon{};  // dominated everywhere
      if (weights[j] == weights[i]) {
        throw DegenerateInput("power_diagram: coincident sites with equal weights");
      }
      continue;  // we dominate j everywhere
    }
    cell = cell.clip_halfplane(n, c);
  }
  return cell;
}

bool all_collinear(const std::vector<Point2>& pts) {
  if (pts.size() < 3) return true;
  std::size_t a = 0, b = 1;
  while (b < pts.size() && pts[b] == pts[a]) ++b;
  if (b == pts.size()) return true;
  for (std::size_t k = b + 1; k < pts.size(); ++k) {
    if (orient2d(pts[a], pts[b], pts[k]) != 0.0) return false;
  }
  return true;
}

}  // namespace

std::vector<PowerCell> power_cells(const std::vector<Point2>& sites,
                                   const std::vector<double>& weights, const Polygon& bounds) {
  std::size_t n = sites.size();
  if (n == 0) throw ValidationError("power_cells: no sites");
  if (weights.size() != n) throw ValidationError("power_cells: sites/weights size mismatch");
  if (bounds.empty()) throw ValidationError("power_cells: empty bounds");
  if (!bounds.is_convex(1e-9)) throw DegenerateInput("power_cells: bounds must be convex");

  std::vector<PowerCell> cells(n);
  for (std::size_t i = 0; i < n; ++i) cells[i].site = static_cast<int>(i);

  if (n == 1) {
    cells[0].boundary = bounds;
    return cells;
  }

  if (n < 3 || all_collinear(sites)) {
    // Direct O(n^2) halfplane construction; also the degenerate-geometry path.
    std::vector<int> all;
    for (std::size_t j = 0; j < n; ++j) all.push_back(static_cast<int>(j));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> others;
      for (int j : all) {
        if (j != static_cast<int>(i)) others.push_back(j);
      }
      cells[i].boundary = clip_cell(bounds, sites, weights, static_cast<int>(i), others);
    }
    return cells;
  }

  // General position: clip only against regular-triangulation neighbors,
  // which are exactly the sites whose cells can share an edge with ours.
  Triangulation tri = regular_triangulation(sites, weights);
  for (std::size_t i = 0; i < n; ++i) {
    if (tri.hidden[i]) continue;  // empty cell
    cells[i].boundary = clip_cell(bounds, sites, weights, static_cast<int>(i), tri.neighbors[i]);
  }
  return cells;
}

std::vector<PowerCell> power_diagram(const std::vector<Circle>& circles, const Polygon& bounds) {
  std::vector<Point2> sites;
  std::vector<double> weights;
  sites.reserve(circles.size());
  weights.reserve(circles.size());
  for (const Circle& c : circles) {
    sites.push_back(c.center);
    weights.push_back(c.r * c.r);
  }
  return power_cells(sites, weights, bounds);
}

Circle weighted_circumcircle(const Circle& a, const Circle& b, const Circle& c) {
  // Solve 2(pb-pa).q = (|pb|^2 - rb^2) - (|pa|^2 - ra^2) and the bc analogue.
  double a11 = 2.0 * (b.center.x - a.center.x);
  double a12 = 2.0 * (b.center.y - a.center.y);
  double a21 = 2.0 * (c.center.x - b.center.x);
  double a22 = 2.0 * (c.center.y - b.center.y);
  double za = norm2(a.center) - a.r * a.r;
  double zb = norm2(b.center) - b.r * b.r;
  double zc = norm2(c.center) - c.r * c.r;
  double r1 = zb - za;
  double r2 = zc - zb;
  double det = a11 * a22 - a12 * a21;
  if (det == 0.0 || orient2d(a.center, b.center, c.center) == 0.0) {
    throw DegenerateInput("weighted_circumcircle: collinear centers");
  }
  Point2 q{(r1 * a22 - r2 * a12) / det, (a11 * r2 - a21 * r1) / det};
  double pow_a = dist2(q, a.center) - a.r * a.r;
  return Circle(q, std::sqrt(std::max(0.0, pow_a)));
}

std::vector<Polygon> capacity_partition(const Polygon& bounds, const std::vector<Point2>& seeds,
                                        const std::vector<double>& fractions,
                                        const CapacityOptions& opts) {
  std::size_t k = seeds.size();
  if (k == 0) throw ValidationError("capacity_partition: no seeds");
  if (fractions.size() != k) throw ValidationError("capacity_partition: seeds/fractions mismatch");
  if (bounds.empty() || !bounds.is_convex(1e-9)) {
    throw DegenerateInput("capacity_partition: bounds must be a convex polygon");
  }
  double fsum = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw DegenerateInput("capacity_partition: fractions must be positive");
    fsum += f;
  }
  if (std::fabs(fsum - 1.0) > 1e-9) {
    throw DegenerateInput("capacity_partition: fractions must sum to 1");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (seeds[i] == seeds[j]) throw DegenerateInput("capacity_partition: duplicate seeds");
    }
    if (bounds.signed_distance(seeds[i]) <= 0.0) {
      throw DegenerateInput("capacity_partition: seed outside bounds");
    }
  }

  if (k == 1) return {bounds};

  double total = bounds.area();
  std::vector<double> target(k);
  for (std::size_t i = 0; i < k; ++i) target[i] = fractions[i] * total;

  std::vector<double> w(k, 0.0);
  double eta = 1.0;
  double prev_err = std::numeric_limits<double>::infinity();
  double best_err = prev_err;
  std::vector<PowerCell> cells;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    cells = power_cells(seeds, w, bounds);
    double max_rel = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double area = cells[i].empty() ? 0.0 : cells[i].boundary.area();
      max_rel = std::max(max_rel, std::fabs(target[i] - area) / target[i]);
    }
    if (max_rel <= opts.tolerance) {
      std::vector<Polygon> out(k);
      for (std::size_t i = 0; i < k; ++i) out[i] = cells[i].boundary;
      return out;
    }
    // Damping on oscillation; growth while progress is steady. The area
    // response to a weight change scales with shared-edge length over seed
    // distance, so spread-out seeds need a far larger step than packed ones.
    if (max_rel > prev_err) {
      eta = std::max(eta * 0.5, 1e-6);
    } else {
      eta = std::min(eta * 1.3, 1e9);
    }
    prev_err = max_rel;
    best_err = std::min(best_err, max_rel);
    double mean_w = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double area = cells[i].empty() ? 0.0 : cells[i].boundary.area();
      w[i] += eta * (target[i] - area);
      mean_w += w[i];
    }
    mean_w /= static_cast<double>(k);
    for (double& wi : w) wi -= mean_w;  // power weights are translation invariant
  }
  throw NonConvergence("capacity_partition: best max relative area error " +
                       std::to_string(best_err) + " after " + std::to_string(opts.max_iterations) +
                       " iterations");
}

}  // namespace ncp::geom
