#include "ncp/pdlayout.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "ncp/errors.hpp"
#include "ncp/geom/power.hpp"
#include "ncp/geom/predicates.hpp"
#include "ncp/geom/triangulation.hpp"
#include "ncp/kmeans.hpp"
#include "ncp/parallel.hpp"

namespace ncp {

using geom::Circle;
using geom::Point2;
using geom::Polygon;

namespace {

constexpr double kGoldenAngle = 2.39996322972865332;

std::vector<std::vector<int>> cluster_indices(const std::vector<int>& labels, int k) {
  std::vector<std::vector<int>> idx(k);
  for (std::size_t i = 0; i < labels.size(); ++i) idx[labels[i]].push_back(static_cast<int>(i));
  return idx;
}

Point2 rotate(const Point2& p, double c, double s) { return {c * p.x - s * p.y, s * p.x + c * p.y}; }

double cloud_principal_angle(const std::vector<Point2>& pts, const std::vector<int>& idx,
                             const Point2& mean) {
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int i : idx) {
    Point2 d = pts[i] - mean;
    sxx += d.x * d.x;
    syy += d.y * d.y;
    sxy += d.x * d.y;
  }
  if (sxx == 0.0 && syy == 0.0 && sxy == 0.0) return 0.0;
  return 0.5 * std::atan2(2.0 * sxy, sxx - syy);
}

// Largest uniform radius multiplier the cluster admits at these positions:
// min of boundary slack / w_i and pair distance / (w_i + w_j). Negative when
// a position lies outside the region.
double cluster_fill_scale(const LayoutState& st, const std::vector<int>& idx,
                          const std::vector<Point2>& pos, const Polygon& region) {
  double fill = std::numeric_limits<double>::max();
  for (std::size_t a = 0; a < idx.size(); ++a) {
    int i = idx[a];
    fill = std::min(fill, region.signed_distance(pos[i]) / st.weights[i]);
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      int j = idx[b];
      fill = std::min(fill, dist(pos[i], pos[j]) / (st.weights[i] + st.weights[j]));
    }
  }
  return fill;
}

// Similarity-transform fit: centroid to region centroid, principal axes
// aligned, then the largest uniform spread that keeps all circles inside the
// region (binary search, 20 steps). When even a collapsed cluster cannot
// contain the circles, fall back to point containment; the subsequent global
// s restoration makes radii feasible again.
void fit_cluster(LayoutState& st, const std::vector<int>& idx, const Polygon& region) {
  Point2 rc = region.centroid();
  if (idx.size() == 1) {
    st.positions[idx[0]] = rc;
    return;
  }
  Point2 cc{0.0, 0.0};
  for (int i : idx) cc += st.positions[i];
  cc = cc / static_cast<double>(idx.size());

  double rot = region.principal_angle() - cloud_principal_angle(st.positions, idx, cc);
  double cr = std::cos(rot), sr = std::sin(rot);
  std::vector<Point2> base(idx.size());
  double spread = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    base[a] = rotate(st.positions[idx[a]] - cc, cr, sr);
    spread = std::max(spread, norm(base[a]));
  }

  double margin = 1e-9 * region.diameter();
  bool circle_mode = true;
  {
    // Feasibility of the fully collapsed cluster decides the mode.
    for (int i : idx) {
      if (region.signed_distance(rc) < st.radius(i)) circle_mode = false;
    }
  }
  auto feasible = [&](double f) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      double need = circle_mode ? st.radius(idx[a]) : margin;
      if (region.signed_distance(rc + base[a] * f) < need) return false;
    }
    return true;
  };

  double fstar = 0.0;
  if (spread > 0.0) {
    double hi = 2.0 * region.diameter() / spread;
    if (feasible(hi)) {
      fstar = hi;
    } else {
      double lo = 0.0;
      for (int step = 0; step < 20; ++step) {
        double mid = 0.5 * (lo + hi);
        if (feasible(mid)) lo = mid;
        else hi = mid;
      }
      fstar = lo;
    }
  }

  std::vector<Point2> candidate = st.positions;
  for (std::size_t a = 0; a < idx.size(); ++a) candidate[idx[a]] = rc + base[a] * fstar;

  // Monotone fill acceptance: keep the original placement only when it is
  // already inside the region and fills it at least as well.
  double fill_new = cluster_fill_scale(st, idx, candidate, region);
  double fill_old = cluster_fill_scale(st, idx, st.positions, region);
  if (fill_new >= fill_old) {
    st.positions = std::move(candidate);
  }
}

// Exact proper-crossing test on segment pq vs ab.
bool segments_cross(const Point2& p, const Point2& q, const Point2& a, const Point2& b) {
  double o1 = geom::orient2d(p, q, a);
  double o2 = geom::orient2d(p, q, b);
  double o3 = geom::orient2d(a, b, p);
  double o4 = geom::orient2d(a, b, q);
  return ((o1 > 0) != (o2 > 0)) && o1 != 0 && o2 != 0 && ((o3 > 0) != (o4 > 0)) && o3 != 0 &&
         o4 != 0;
}

}  // namespace

int LayoutState::cluster_count() const {
  int k = 0;
  for (int l : layout_labels) k = std::max(k, l + 1);
  return k;
}

LayoutState make_stage2_state(const PlanarGraph& g, const std::vector<double>& weights) {
  if (static_cast<int>(weights.size()) != g.node_count()) {
    throw ValidationError("make_stage2_state: weights size mismatch");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw ValidationError("make_stage2_state: weights must be positive");
  }
  LayoutState st;
  st.graph = g;
  st.positions = g.positions();
  st.weights = weights;
  st.s = 1.0;
  st.center = {0.0, 0.0};
  double area = 0.0;
  for (double w : weights) area += geom::kPi * w * w;
  double half = std::sqrt(4.0 * area) / 2.0;
  st.bounds = geom::make_square_centered(st.center, half);
  return st;
}

double objective_stage2(const LayoutState& st, const StageConfig& cfg) {
  double fp = 0.0;
  for (auto [i, j] : st.graph.edges()) fp += dist(st.positions[i], st.positions[j]);
  double fc = 0.0;
  for (const Point2& p : st.positions) fc += dist(p, st.center);
  return (fp + cfg.alpha * fc) / st.s;
}

void cluster_positions(LayoutState& st, const StageConfig& cfg) {
  int n = static_cast<int>(st.positions.size());
  if (n < 2) {
    st.layout_labels.assign(n, 0);
    return;
  }
  Rng rng = rng_stream(cfg.seed, "stage2.kmeans");
  KMeansResult res =
      kmeans_best_k(st.positions, cfg.kmeans_k_lo, cfg.kmeans_k_hi, rng, cfg.kmeans_restarts);
  st.layout_labels = res.assignment;
  double sil = mean_silhouette(st.positions, res.assignment,
                               static_cast<int>(res.centers.size()));
  if (sil <= 0.0) st.notes.push_back("cluster_positions: degenerate silhouette " +
                                     std::to_string(sil));
  // Labels must be dense in [0, k); k-means can leave empty clusters only in
  // degenerate inputs, so compact them.
  std::vector<int> remap(res.centers.size(), -1);
  int next = 0;
  for (int& l : st.layout_labels) {
    if (remap[l] < 0) remap[l] = next++;
    l = remap[l];
  }
}

void partition_and_fit(LayoutState& st, const StageConfig& cfg) {
  if (st.layout_labels.empty()) throw ValidationError("partition_and_fit: cluster first");
  int k = st.cluster_count();
  auto idx = cluster_indices(st.layout_labels, k);

  // Map the raw embedding into the central 80% of bounds so capacity seeds
  // are strictly interior.
  Point2 lo = st.positions[0], hi = st.positions[0];
  for (const Point2& p : st.positions) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  // Recenter on the box midpoint, not the mean: with the midpoint every point
  // lands within 0.4*bspan of center, strictly inside the bounds square, even
  // for skewed embeddings.
  Point2 mid = (lo + hi) * 0.5;
  Point2 blo, bhi;
  st.bounds.bounding_box(blo, bhi);
  double span = std::max(hi.x - lo.x, hi.y - lo.y);
  double bspan = std::min(bhi.x - blo.x, bhi.y - blo.y);
  double f = span > 0.0 ? 0.8 * bspan / span : 1.0;
  for (Point2& p : st.positions) p = st.center + (p - mid) * f;

  std::vector<double> fractions(k, 0.0);
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    for (int i : idx[c]) fractions[c] += st.weights[i] * st.weights[i];
    total += fractions[c];
  }
  for (double& fr : fractions) fr /= total;

  std::vector<Point2> seeds(k);
  for (int c = 0; c < k; ++c) {
    Point2 m{0.0, 0.0};
    for (int i : idx[c]) m += st.positions[i];
    seeds[c] = m / static_cast<double>(idx[c].size());
  }
  // Distinct-seed guarantee for clusters whose means collide.
  double nudge = 1e-6 * st.bounds.diameter();
  for (int c = 0; c < k; ++c) {
    for (int b = 0; b < c; ++b) {
      if (seeds[c] == seeds[b]) {
        double ang = kGoldenAngle * (c + 1);
        seeds[c] += Point2{std::cos(ang), std::sin(ang)} * nudge;
      }
    }
  }

  geom::CapacityOptions copts;
  copts.tolerance = cfg.capacity_tolerance;
  st.regions = capacity_partition(st.bounds, seeds, fractions, copts);

  parallel_for(k, [&](std::size_t c) { fit_cluster(st, idx[c], st.regions[c]); });

  // Exact duplicates would zero the feasible scale; spread them minutely.
  for (int c = 0; c < k; ++c) {
    for (std::size_t a = 0; a < idx[c].size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        if (st.positions[idx[c][a]] == st.positions[idx[c][b]]) {
          double ang = kGoldenAngle * (idx[c][a] + 1);
          st.positions[idx[c][a]] +=
              Point2{std::cos(ang), std::sin(ang)} * (1e-9 * st.regions[c].diameter());
        }
      }
    }
  }

  // Restore the coupling: largest s with containment and no intra-cluster
  // overlap (regions are disjoint, so cross-cluster pairs are covered by
  // containment).
  double s = std::numeric_limits<double>::max();
  for (int c = 0; c < k; ++c) {
    s = std::min(s, cluster_fill_scale(st, idx[c], st.positions, st.regions[c]));
  }
  if (!(s > 0.0)) throw NonConvergence("partition_and_fit: no positive feasible scale");
  st.s = s;
}

void lloyd_step(LayoutState& st, const StageConfig& cfg) {
  (void)cfg;
  int k = st.cluster_count();
  if (k == 0) throw ValidationError("lloyd_step: cluster and partition first");
  auto idx = cluster_indices(st.layout_labels, k);

  for (int attempt = 0;; ++attempt) {
    std::vector<Point2> next = st.positions;
    std::atomic<int> failed{0};
    parallel_for(k, [&](std::size_t c) {
      const std::vector<int>& members = idx[c];
      std::vector<Point2> sites(members.size());
      std::vector<double> pw(members.size());
      for (std::size_t a = 0; a < members.size(); ++a) {
        sites[a] = st.positions[members[a]];
        double r = st.radius(members[a]);
        pw[a] = r * r;
      }
      std::vector<geom::PowerCell> cells;
      try {
        cells = geom::power_cells(sites, pw, st.regions[c]);
      } catch (const std::exception&) {
        failed.store(1);
        return;
      }
      for (std::size_t a = 0; a < members.size(); ++a) {
        if (cells[a].empty()) {
          failed.store(1);
          return;
        }
        int i = members[a];
        const Polygon& cell = cells[a].boundary;
        Point2 centroid = cell.centroid();
        Point2 move = centroid - st.positions[i];
        double len = norm(move);
        double inradius = cell.distance_to_boundary(centroid);
        if (len > inradius && len > 0.0) move = move * (inradius / len);
        double t = geom::max_step_inside(cell, st.positions[i], st.positions[i] + move,
                                         st.radius(i));
        next[i] = st.positions[i] + move * t;
      }
    });
    if (!failed.load()) {
      st.positions = std::move(next);
      break;
    }
    if (attempt >= 10) {
      throw LayoutNonConvergence("lloyd_step: empty power cells persist after 10 scale cuts", st);
    }
    st.s *= 0.95;
    st.notes.push_back("lloyd_step: empty cell, s cut to " + std::to_string(st.s));
  }

  // Largest growth factor keeping containment and intra-cluster separation.
  double growth = std::numeric_limits<double>::max();
  for (int c = 0; c < k; ++c) {
    const std::vector<int>& members = idx[c];
    for (std::size_t a = 0; a < members.size(); ++a) {
      int i = members[a];
      growth = std::min(growth, st.regions[c].signed_distance(st.positions[i]) / st.radius(i));
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        int j = members[b];
        growth = std::min(growth, dist(st.positions[i], st.positions[j]) /
                                      (st.radius(i) + st.radius(j)));
      }
    }
  }
  // The clamped centroid moves keep every factor >= 1; the floor only guards
  // rounding.
  growth = std::max(growth, 1.0);
  st.s *= growth;
  st.s_history.push_back(st.s);
}

void preserve_edges(LayoutState& st, const StageConfig& cfg) {
  int n = static_cast<int>(st.positions.size());
  if (n < 3 || st.graph.edge_count() == 0) return;

  auto triangulate = [&]() {
    std::vector<double> pw(n);
    for (int i = 0; i < n; ++i) {
      double r = st.radius(i);
      pw[i] = r * r;
    }
    return geom::regular_triangulation(st.positions, pw);
  };

  auto constraints_ok = [&](int mover, const Point2& q) {
    if (!std::isfinite(q.x) || !std::isfinite(q.y)) return false;
    double r = st.radius(mover);
    const Polygon& region = st.regions.empty() ? st.bounds : st.regions[st.layout_labels[mover]];
    if (!region.empty() && region.signed_distance(q) < r) return false;
    for (int j = 0; j < n; ++j) {
      if (j != mover && dist(q, st.positions[j]) < r + st.radius(j)) return false;
    }
    return true;
  };

  auto objective_delta = [&](int mover, const Point2& q) {
    double d = 0.0;
    for (int j : st.graph.neighbors(mover)) {
      d += dist(q, st.positions[j]) - dist(st.positions[mover], st.positions[j]);
    }
    d += cfg.alpha * (dist(q, st.center) - dist(st.positions[mover], st.center));
    return d / st.s;
  };

  // One triangulation per call; moves within the call only reposition circles,
  // so triangle connectivity is read as-of entry while crossing tests and
  // circumcircles always use current positions.
  geom::Triangulation tri;
  try {
    tri = triangulate();
  } catch (const DegenerateInput&) {
    st.notes.push_back("preserve_edges: degenerate triangulation, skipped");
    return;
  }
  std::vector<std::vector<int>> tris_of(n);
  for (std::size_t t = 0; t < tri.tris.size(); ++t) {
    for (int v = 0; v < 3; ++v) tris_of[tri.tris[t][v]].push_back(static_cast<int>(t));
  }

  // Center of the weighted circumcircle of the anchor triangle blocking the
  // missing edge (anchor, mover); nullopt-style flag via the bool.
  auto blocking_center = [&](int anchor, int mover, Point2& out) {
    for (int t : tris_of[anchor]) {
      const auto& tr = tri.tris[t];
      int slot = -1;
      for (int v = 0; v < 3; ++v) {
        if (tr[v] == anchor) slot = v;
      }
      int a = tr[(slot + 1) % 3];
      int b = tr[(slot + 2) % 3];
      if (a == mover || b == mover) continue;
      if (!segments_cross(st.positions[anchor], st.positions[mover], st.positions[a],
                          st.positions[b])) {
        continue;
      }
      Circle ca{st.positions[anchor], st.radius(anchor)};
      Circle cb{st.positions[a], st.radius(a)};
      Circle cc{st.positions[b], st.radius(b)};
      try {
        out = geom::weighted_circumcircle(ca, cb, cc).center;
        return true;
      } catch (const DegenerateInput&) {
        return false;
      }
    }
    return false;
  };

  std::vector<std::pair<int, int>> missing;
  for (auto [i, j] : st.graph.edges()) {
    if (!tri.has_edge(i, j)) missing.push_back({i, j});
  }

  int accepted = 0, skipped = 0;
  for (auto [i, j] : missing) {
    bool done = false;
    for (auto [mover, anchor] : {std::pair{i, j}, std::pair{j, i}}) {
      Point2 target;
      if (!blocking_center(anchor, mover, target)) continue;
      Point2 dir = target - st.positions[mover];
      double dlen = norm(dir);
      if (dlen == 0.0) continue;
      dir = dir / dlen;
      double step = 0.5 * dist(st.positions[i], st.positions[j]);
      for (int h = 0; h <= 10 && !done; ++h, step *= 0.5) {
        Point2 q = st.positions[mover] + dir * step;
        double delta = objective_delta(mover, q);
        if (delta < 0.0 && constraints_ok(mover, q)) {
          st.positions[mover] = q;
          st.preserve_worst_delta = std::max(st.preserve_worst_delta, delta);
          ++accepted;
          done = true;
        }
      }
      if (done) break;
    }
    if (!done) ++skipped;
  }
  st.preserve_accepted += accepted;
  if (skipped > 0) {
    st.notes.push_back("preserve_edges: skipped " + std::to_string(skipped) + " of " +
                       std::to_string(missing.size()) + " missing edges");
  }
}

LayoutState run_stage2(LayoutState st, const StageConfig& cfg) {
  int n = static_cast<int>(st.positions.size());
  if (n == 0) throw ValidationError("run_stage2: empty state");
  if (st.bounds.empty()) throw ValidationError("run_stage2: bounds not set");
  if (n == 1) {
    st.layout_labels = {0};
    st.regions = {st.bounds};
    Point2 c = st.bounds.centroid();
    st.positions[0] = c;
    st.s = st.bounds.distance_to_boundary(c) / st.weights[0];
    st.s_history.push_back(st.s);
    return st;
  }
  cluster_positions(st, cfg);
  partition_and_fit(st, cfg);
  int quiet = 0;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    double before = st.s;
    lloyd_step(st, cfg);
    preserve_edges(st, cfg);
    quiet = (st.s / before < 1.001) ? quiet + 1 : 0;
    if (quiet >= 5) break;
  }
  return st;
}

double min_pair_gap(const std::vector<Point2>& positions, const std::vector<double>& radii) {
  double gap = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      gap = std::min(gap, dist(positions[i], positions[j]) - radii[i] - radii[j]);
    }
  }
  return gap;
}

}  // namespace ncp
