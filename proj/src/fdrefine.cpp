#include "ncp/fdrefine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "ncp/errors.hpp"
#include "ncp/geom/envelope.hpp"
#include "ncp/parallel.hpp"

namespace ncp {

using geom::Circle;
using geom::Point2;

namespace {

constexpr double kGoldenAngle = 2.39996322972865332;

std::map<int, std::vector<int>> by_label(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(static_cast<int>(i));
  return groups;
}

// Uniform grid over circle centers, cell edge 2 * rmax, so any overlapping
// pair lives in the same or an adjacent cell.
class CircleGrid {
 public:
  CircleGrid(const std::vector<Point2>& pos, const std::vector<double>& radii) {
    double rmax = 0.0;
    for (double r : radii) rmax = std::max(rmax, r);
    cell_ = std::max(2.0 * rmax, 1e-300);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      cells_[key(pos[i])].push_back(static_cast<int>(i));
    }
  }

  // Emits each candidate pair (i < j) at most once.
  template <typename F>
  void for_candidate_pairs(const std::vector<Point2>& pos, F&& fn) const {
    for (const auto& [k, members] : cells_) {
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          fn(std::min(members[a], members[b]), std::max(members[a], members[b]));
        }
      }
      // Half of the 8 neighbor offsets avoids double visits across cells.
      for (auto [dx, dy] : {std::pair{1, 0}, std::pair{1, 1}, std::pair{0, 1}, std::pair{-1, 1}}) {
        auto it = cells_.find(offset(k, dx, dy));
        if (it == cells_.end()) continue;
        for (int i : members) {
          for (int j : it->second) fn(std::min(i, j), std::max(i, j));
        }
      }
    }
    (void)pos;
  }

 private:
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;

  std::uint64_t key(const Point2& p) const {
    auto gx = static_cast<std::int64_t>(std::floor(p.x / cell_));
    auto gy = static_cast<std::int64_t>(std::floor(p.y / cell_));
    return pack(gx, gy);
  }
  static std::uint64_t pack(std::int64_t gx, std::int64_t gy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(gx)) << 32) |
           static_cast<std::uint32_t>(gy);
  }
  static std::uint64_t offset(std::uint64_t k, int dx, int dy) {
    auto gx = static_cast<std::int32_t>(k >> 32) + dx;
    auto gy = static_cast<std::int32_t>(k & 0xffffffffu) + dy;
    return pack(gx, gy);
  }
};

}  // namespace

std::vector<int> detect_boundary(const LayoutState& st, const std::vector<int>& labels) {
  if (labels.size() != st.positions.size()) {
    throw ValidationError("detect_boundary: labels size mismatch");
  }
  std::vector<int> delta;
  for (const auto& [label, members] : by_label(labels)) {
    if (members.size() <= 2) {
      delta.insert(delta.end(), members.begin(), members.end());
      continue;
    }
    std::vector<Circle> circles;
    circles.reserve(members.size());
    for (int i : members) circles.push_back({st.positions[i], st.radius(i)});
    geom::EnvelopeResult env = geom::circle_union_envelope_full(circles);
    std::vector<char> on_outer(members.size(), 0);
    for (int li : env.outer) {
      for (int c : env.loops[li].contributors) on_outer[c] = 1;
    }
    for (std::size_t a = 0; a < members.size(); ++a) {
      if (on_outer[a]) delta.push_back(members[a]);
    }
  }
  std::sort(delta.begin(), delta.end());
  return delta;
}

std::vector<ConvexityTarget> convexity_targets(const LayoutState& st,
                                               const std::vector<int>& labels,
                                               const std::vector<int>& delta) {
  std::vector<char> in_delta(st.positions.size(), 0);
  for (int i : delta) in_delta[i] = 1;

  std::vector<ConvexityTarget> targets;
  for (const auto& [label, members] : by_label(labels)) {
    if (members.size() < 3) continue;
    std::vector<Circle> circles;
    circles.reserve(members.size());
    Point2 centroid{0.0, 0.0};
    for (int i : members) {
      circles.push_back({st.positions[i], st.radius(i)});
      centroid += st.positions[i];
    }
    centroid = centroid / static_cast<double>(members.size());

    geom::DiskHull hull;
    try {
      hull = geom::disk_hull(circles);
    } catch (const DegenerateInput&) {
      continue;  // degenerate hull: cluster skipped
    }
    if (hull.order.size() < 2) continue;

    std::vector<char> on_hull(members.size(), 0);
    for (int t : hull.order) on_hull[t] = 1;

    // Angular position of each hull disk around the cluster centroid; the
    // bridge spanning a gap is keyed by the hull slot that starts it.
    std::size_t m = hull.order.size();
    std::vector<double> hull_angle(m);
    for (std::size_t t = 0; t < m; ++t) {
      Point2 d = circles[hull.order[t]].center - centroid;
      hull_angle[t] = std::atan2(d.y, d.x);
    }

    for (std::size_t a = 0; a < members.size(); ++a) {
      int i = members[a];
      if (!in_delta[i] || on_hull[a]) continue;
      Point2 d = st.positions[i] - centroid;
      double ang = std::atan2(d.y, d.x);
      // Find the hull slot t whose CCW interval [angle_t, angle_{t+1})
      // contains ang.
      std::size_t slot = m;  // sentinel
      for (std::size_t t = 0; t < m; ++t) {
        double a0 = hull_angle[t];
        double a1 = hull_angle[(t + 1) % m];
        double span = a1 - a0;
        while (span <= 0.0) span += geom::kTwoPi;
        double off = ang - a0;
        while (off < 0.0) off += geom::kTwoPi;
        if (off < span) {
          slot = t;
          break;
        }
      }
      if (slot == m) slot = 0;  // collinear centroid degeneracies
      const geom::DiskHull::Bridge& br = hull.bridges[slot];
      ConvexityTarget tgt;
      tgt.circle = i;
      tgt.a = br.a;
      tgt.b = br.b;
      tgt.m = (br.a + br.b) * 0.5;
      Point2 dir = tgt.m - st.positions[i];
      double len = norm(dir);
      if (len == 0.0) continue;  // non-smooth: no target
      tgt.q = st.positions[i] + dir * (st.radius(i) / len);
      targets.push_back(tgt);
    }
  }
  return targets;
}

double objective_stage3(const LayoutState& st, const std::vector<ConvexityTarget>& targets,
                        const RefineConfig& cfg) {
  double fp = 0.0;
  for (auto [i, j] : st.graph.edges()) fp += dist(st.positions[i], st.positions[j]);
  double fc = 0.0;
  for (const Point2& p : st.positions) fc += dist(p, st.center);
  double fv = 0.0;
  for (const ConvexityTarget& t : targets) {
    fv += std::fabs(dist(t.m, st.positions[t.circle]) - st.radius(t.circle));
  }
  return (fp + cfg.alpha * fc) / st.s + cfg.beta * fv;
}

std::vector<Point2> assemble_forces(const LayoutState& st,
                                    const std::vector<ConvexityTarget>& targets,
                                    const RefineConfig& cfg) {
  std::vector<Point2> force(st.positions.size(), {0.0, 0.0});
  for (auto [i, j] : st.graph.edges()) {
    Point2 u = normalized(st.positions[i] - st.positions[j]);
    // Attractive along the edge; zero for coincident centers (non-smooth).
    force[i] -= u / st.s;
    force[j] += u / st.s;
  }
  for (std::size_t i = 0; i < st.positions.size(); ++i) {
    force[i] -= normalized(st.positions[i] - st.center) * (cfg.alpha / st.s);
  }
  for (const ConvexityTarget& t : targets) {
    Point2 u = normalized(t.m - st.positions[t.circle]);
    double d = dist(t.m, st.positions[t.circle]);
    double r = st.radius(t.circle);
    if (d == r || (u.x == 0.0 && u.y == 0.0)) continue;  // non-smooth: zero
    force[t.circle] += u * (d > r ? cfg.beta : -cfg.beta);
  }
  return force;
}

void resolve_overlaps(LayoutState& st, const RefineConfig& cfg) {
  int n = static_cast<int>(st.positions.size());
  if (n < 2) return;
  for (int shrink = 0;; ++shrink) {
    double tol = cfg.overlap_tolerance * st.s;
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i) radii[i] = st.radius(i);
    bool resolved = false;
    for (int pass = 0; pass < 50; ++pass) {
      CircleGrid grid(st.positions, radii);
      struct Hit {
        double pen;
        int i, j;
      };
      double pen_max = 0.0;
      grid.for_candidate_pairs(st.positions, [&](int i, int j) {
        double pen = radii[i] + radii[j] - dist(st.positions[i], st.positions[j]);
        if (pen > pen_max) pen_max = pen;
      });
      if (pen_max <= tol) {
        resolved = true;
        break;
      }
      // Work on the local contact network: every pair close enough to be
      // pushed into violation during this pass, not just the current
      // violators — otherwise pushes pump penetration into untracked pairs.
      double margin = 2.0 * pen_max + tol;
      std::vector<Hit> hits;
      grid.for_candidate_pairs(st.positions, [&](int i, int j) {
        double pen = radii[i] + radii[j] - dist(st.positions[i], st.positions[j]);
        if (pen > -margin) hits.push_back({pen, i, j});
      });
      std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.pen != b.pen) return a.pen > b.pen;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
      });
      // Sweep the contact network until quiescent. Pushes move circles far
      // less than a grid cell, so the pair list stays valid within a pass;
      // the fresh grid scan at the top of the next pass re-verifies globally.
      for (int sweep = 0; sweep < 64; ++sweep) {
        double worst = 0.0;
        for (const Hit& h : hits) {
          // Re-measure: earlier pushes in this pass may have moved the pair.
          Point2 d = st.positions[h.j] - st.positions[h.i];
          double len = norm(d);
          double pen = radii[h.i] + radii[h.j] - len;
          worst = std::max(worst, pen);
          if (pen <= 0.0) continue;
          Point2 u;
          if (len > 0.0) {
            u = d / len;
          } else {
            double ang = kGoldenAngle * (h.i + 1);
            u = {std::cos(ang), std::sin(ang)};
          }
          st.positions[h.i] -= u * (0.5 * pen);
          st.positions[h.j] += u * (0.5 * pen);
        }
        if (worst <= tol) break;
      }
    }
    if (resolved) return;
    if (shrink >= 10) {
      throw LayoutNonConvergence("resolve_overlaps: overlaps persist after 10 scale cuts", st);
    }
    st.s *= 0.995;
  }
}

LayoutState run_stage3(LayoutState st, const std::vector<int>& labels, const RefineConfig& cfg) {
  if (labels.size() != st.positions.size()) {
    throw ValidationError("run_stage3: labels size mismatch");
  }
  if (cfg.iterations < 1) throw ValidationError("run_stage3: iterations must be >= 1");

  double mean_r = 0.0;
  for (std::size_t i = 0; i < st.positions.size(); ++i) mean_r += st.radius(i);
  mean_r /= std::max<std::size_t>(1, st.positions.size());
  double v0 = cfg.initial_velocity_scale * mean_r;

  auto fresh_targets = [&](const LayoutState& s) {
    return convexity_targets(s, labels, detect_boundary(s, labels));
  };

  std::vector<ConvexityTarget> targets = fresh_targets(st);
  LayoutState best = st;
  double best_obj = objective_stage3(st, targets, cfg);

  auto checkpoint = [&](const LayoutState& s, const std::vector<ConvexityTarget>& tg) {
    double obj = objective_stage3(s, tg, cfg);
    if (obj < best_obj) {
      best_obj = obj;
      best = s;
    }
  };

  try {
    for (int t = 1; t <= cfg.iterations; ++t) {
      double velocity = v0 * (1.0 - static_cast<double>(t) / cfg.iterations);
      if (velocity > 0.0) {
        std::vector<Point2> force = assemble_forces(st, targets, cfg);
        // Normalize the force field by its largest magnitude so the busiest
        // circle moves exactly one velocity step and balanced circles stay
        // put; unit-direction steps would jitter at equilibrium and feed the
        // overlap resolver forever.
        double fmax = 0.0;
        for (const Point2& f : force) fmax = std::max(fmax, norm(f));
        if (fmax > 0.0) {
          double scale = velocity / fmax;
          for (std::size_t i = 0; i < st.positions.size(); ++i) {
            st.positions[i] += force[i] * scale;
          }
          resolve_overlaps(st, cfg);
        }
      }
      if (t % cfg.target_refresh == 0 || t == cfg.iterations) {
        targets = fresh_targets(st);
        checkpoint(st, targets);
      }
    }
  } catch (const LayoutNonConvergence& e) {
    // Keep the best checkpoint in the payload rather than the broken state.
    throw LayoutNonConvergence(e.what(), best);
  }
  return best;
}

}  // namespace ncp
