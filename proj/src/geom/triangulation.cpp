#include "ncp/geom/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <unordered_map>

#include "ncp/errors.hpp"
#include "ncp/geom/predicates.hpp"

namespace ncp::geom {

namespace {

constexpr int kGhost = -1;

inline std::uint64_t pack_edge(int i, int j) {
  if (i > j) std::swap(i, j);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

// Hilbert index on a 16-bit grid, used only to pick a cache-friendly and
// deterministic insertion order.
std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << 15; s > 0; s >>= 1) {
    std::uint32_t rx = (x & s) ? 1 : 0;
    std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

struct BTri {
  std::array<int, 3> v{};
  std::array<int, 3> nbr{};
  bool alive = true;
  bool ghost() const { return v[2] == kGhost; }
};

class Builder {
 public:
  Builder(const std::vector<Point2>& pts, const std::vector<double>& wts) : pts_(pts), wts_(wts) {}

  void run();
  Triangulation take();

 private:
  double weight(int i) const { return wts_.empty() ? 0.0 : wts_[i]; }

  bool on_segment_span(int a, int b, int p) const {
    Point2 d = pts_[b] - pts_[a];
    double t = dot(pts_[p] - pts_[a], d);
    return t > 0.0 && t < dot(d, d);
  }

  bool conflict(const BTri& t, int p) const {
    if (t.ghost()) {
      // Stored (b, a, ghost) for hull edge a->b; outside is left of b->a.
      double o = orient2d(pts_[t.v[0]], pts_[t.v[1]], pts_[p]);
      if (o > 0.0) return true;
      if (o < 0.0) return false;
      return on_segment_span(t.v[0], t.v[1], p);
    }
    return incircle_power_perturbed(pts_[t.v[0]], weight(t.v[0]), t.v[0], pts_[t.v[1]],
                                    weight(t.v[1]), t.v[1], pts_[t.v[2]], weight(t.v[2]), t.v[2],
                                    pts_[p], weight(p), p) > 0;
  }

  int locate(int p) const;
  void insert(int p);
  int find_slot(const BTri& t, int u, int w) const {
    for (int k = 0; k < 3; ++k) {
      if (t.v[(k + 1) % 3] == u && t.v[(k + 2) % 3] == w) return k;
    }
    return -1;
  }

  const std::vector<Point2>& pts_;
  const std::vector<double>& wts_;
  std::vector<BTri> tris_;
  std::vector<char> hidden_;
  mutable std::vector<int> mark_;
  mutable int epoch_ = 0;
  int last_ = 0;
};

int Builder::locate(int p) const {
  int t = last_;
  std::size_t cap = 4 * tris_.size() + 64;
  for (std::size_t step = 0; step < cap; ++step) {
    const BTri& tri = tris_[t];
    if (tri.ghost()) {
      double o = orient2d(pts_[tri.v[0]], pts_[tri.v[1]], pts_[p]);
      if (o > 0.0) return t;
      if (o == 0.0 && on_segment_span(tri.v[0], tri.v[1], p)) return t;
      t = tri.nbr[2];
      continue;
    }
    int next = -1;
    for (int k = 0; k < 3; ++k) {
      int u = tri.v[(k + 1) % 3];
      int w = tri.v[(k + 2) % 3];
      if (orient2d(pts_[u], pts_[w], pts_[p]) < 0.0) {
        next = tri.nbr[k];
        break;
      }
    }
    if (next < 0) return t;
    t = next;
  }
  // Deterministic fallback; only reachable on adversarial inputs.
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    if (tris_[i].alive && conflict(tris_[i], p)) return static_cast<int>(i);
  }
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    if (tris_[i].alive) return static_cast<int>(i);
  }
  throw DegenerateInput("triangulation: no alive triangle during locate");
}

void Builder::insert(int p) {
  if (mark_.size() < tris_.size()) mark_.resize(tris_.size() + 256, 0);
  int seed = locate(p);
  if (!conflict(tris_[seed], p)) {
    // Search outward for any conflicting triangle; a weighted site with no
    // conflicts anywhere is hidden.
    ++epoch_;
    std::deque<int> q{seed};
    mark_[seed] = epoch_;
    seed = -1;
    while (!q.empty()) {
      int t = q.front();
      q.pop_front();
      if (conflict(tris_[t], p)) {
        seed = t;
        break;
      }
      for (int k = 0; k < 3; ++k) {
        int n = tris_[t].nbr[k];
        if (n >= 0 && tris_[n].alive && mark_[n] != epoch_) {
          mark_[n] = epoch_;
          q.push_back(n);
        }
      }
    }
    if (seed < 0) {
      if (wts_.empty()) throw DegenerateInput("triangulation: unweighted point found no cavity");
      hidden_[p] = 1;
      return;
    }
  }

  // Conflict region: connected set of conflicting triangles around the seed.
  ++epoch_;
  std::vector<int> region;
  std::deque<int> q{seed};
  mark_[seed] = epoch_;
  while (!q.empty()) {
    int t = q.front();
    q.pop_front();
    region.push_back(t);
    for (int k = 0; k < 3; ++k) {
      int n = tris_[t].nbr[k];
      if (n >= 0 && tris_[n].alive && mark_[n] != epoch_ && conflict(tris_[n], p)) {
        mark_[n] = epoch_;
        q.push_back(n);
      }
    }
  }

  // Boundary half-edges (u -> w) as directed in the cavity-side triangle.
  struct HalfEdge {
    int u, w, outside;
  };
  std::vector<HalfEdge> boundary;
  auto in_region = [&](int t) { return t >= 0 && mark_[t] == epoch_; };
  for (int t : region) {
    for (int k = 0; k < 3; ++k) {
      int n = tris_[t].nbr[k];
      if (!in_region(n)) boundary.push_back({tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3], n});
    }
  }

  // Order the boundary into a cycle by chaining endpoint vertices.
  std::unordered_map<int, std::size_t> by_start;
  by_start.reserve(boundary.size() * 2);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (!by_start.emplace(boundary[i].u, i).second) {
      throw DegenerateInput("triangulation: pinched cavity boundary");
    }
  }
  std::vector<std::size_t> cycle;
  cycle.reserve(boundary.size());
  std::vector<char> used(boundary.size(), 0);
  std::size_t cur = 0;
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (used[cur]) throw DegenerateInput("triangulation: cavity boundary is not a single cycle");
    used[cur] = 1;
    cycle.push_back(cur);
    auto it = by_start.find(boundary[cur].w);
    if (it == by_start.end()) throw DegenerateInput("triangulation: open cavity boundary");
    cur = it->second;
  }
  if (cur != cycle.front()) throw DegenerateInput("triangulation: cavity boundary is not a cycle");

  // Vertices strictly inside the cavity lose their star and become hidden.
  if (!wts_.empty()) {
    std::vector<int> inner;
    for (int t : region) {
      for (int v : tris_[t].v) {
        if (v >= 0) inner.push_back(v);
      }
    }
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    for (int v : inner) {
      bool on_boundary = false;
      for (const HalfEdge& he : boundary) {
        if (he.u == v || he.w == v) {
          on_boundary = true;
          break;
        }
      }
      if (!on_boundary) hidden_[v] = 1;
    }
  }

  // New triangles: one per boundary edge, apex p; ghosts rotate ghost to slot 2.
  int base = static_cast<int>(tris_.size());
  int m = static_cast<int>(cycle.size());
  for (int i = 0; i < m; ++i) {
    const HalfEdge& he = boundary[cycle[i]];
    BTri t;
    if (he.u == kGhost) {
      t.v = {he.w, p, kGhost};
    } else if (he.w == kGhost) {
      t.v = {p, he.u, kGhost};
    } else {
      t.v = {he.u, he.w, p};
    }
    t.nbr = {-1, -1, -1};
    tris_.push_back(t);
  }
  if (mark_.size() < tris_.size()) mark_.resize(tris_.size() + 256, 0);

  for (int i = 0; i < m; ++i) {
    const HalfEdge& he = boundary[cycle[i]];
    int id = base + i;
    BTri& t = tris_[id];
    // Across the original boundary edge.
    int slot = find_slot(t, he.u, he.w);
    t.nbr[slot] = he.outside;
    if (he.outside >= 0) {
      int oslot = find_slot(tris_[he.outside], he.w, he.u);
      tris_[he.outside].nbr[oslot] = id;
    }
    // Ring links: this triangle shares edge (w, p) with the next one.
    int next_id = base + (i + 1) % m;
    int s1 = find_slot(t, he.w, p);
    int s2 = find_slot(tris_[next_id], p, he.w);
    if (s1 < 0 || s2 < 0) throw DegenerateInput("triangulation: cavity ring wiring failed");
    t.nbr[s1] = next_id;
    tris_[next_id].nbr[s2] = id;
  }

  for (int t : region) tris_[t].alive = false;
  last_ = base;
}

void Builder::run() {
  std::size_t n = pts_.size();
  hidden_.assign(n, 0);

  // Exact-duplicate scan.
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  {
    std::vector<int> by_pos = order;
    std::sort(by_pos.begin(), by_pos.end(), [&](int a, int b) {
      if (pts_[a].x != pts_[b].x) return pts_[a].x < pts_[b].x;
      if (pts_[a].y != pts_[b].y) return pts_[a].y < pts_[b].y;
      return a < b;
    });
    std::size_t i = 0;
    while (i < by_pos.size()) {
      std::size_t j = i + 1;
      while (j < by_pos.size() && pts_[by_pos[j]] == pts_[by_pos[i]]) ++j;
      if (j - i > 1) {
        if (wts_.empty()) throw DegenerateInput("triangulation: duplicate points");
        int best = by_pos[i];
        for (std::size_t k = i + 1; k < j; ++k) {
          if (wts_[by_pos[k]] > wts_[best]) best = by_pos[k];
        }
        int ties = 0;
        for (std::size_t k = i; k < j; ++k) {
          if (wts_[by_pos[k]] == wts_[best]) ++ties;
          if (by_pos[k] != best) hidden_[by_pos[k]] = 1;
        }
        if (ties > 1) throw DegenerateInput("triangulation: coincident sites with equal weights");
      }
      i = j;
    }
  }

  // Hilbert insertion order over the non-hidden sites.
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-lo.x, -lo.y};
  for (const Point2& p : pts_) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  double span = std::max({hi.x - lo.x, hi.y - lo.y, 1e-300});
  std::vector<std::uint64_t> hkey(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto qx = static_cast<std::uint32_t>(std::min(65535.0, (pts_[i].x - lo.x) / span * 65535.0));
    auto qy = static_cast<std::uint32_t>(std::min(65535.0, (pts_[i].y - lo.y) / span * 65535.0));
    hkey[i] = hilbert_index(qx, qy);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (hkey[a] != hkey[b]) return hkey[a] < hkey[b];
    return a < b;
  });

  // First triangle from the earliest non-collinear triple in insertion order.
  std::vector<int> live;
  live.reserve(n);
  for (int i : order) {
    if (!hidden_[i]) live.push_back(i);
  }
  if (live.size() < 3) throw DegenerateInput("triangulation: fewer than 3 usable points");
  int i0 = live[0];
  int i1 = live[1];
  std::size_t k2 = 2;
  int i2 = -1;
  for (; k2 < live.size(); ++k2) {
    if (orient2d(pts_[i0], pts_[i1], pts_[live[k2]]) != 0.0) {
      i2 = live[k2];
      break;
    }
  }
  if (i2 < 0) throw DegenerateInput("triangulation: all points collinear");
  if (orient2d(pts_[i0], pts_[i1], pts_[i2]) < 0.0) std::swap(i0, i1);

  tris_.clear();
  tris_.push_back({{i0, i1, i2}, {2, 3, 1}, true});   // ghosts wired below
  tris_.push_back({{i1, i0, kGhost}, {3, 2, 0}, true});  // across (i0,i1)
  tris_.push_back({{i2, i1, kGhost}, {1, 3, 0}, true});  // across (i1,i2)
  tris_.push_back({{i0, i2, kGhost}, {2, 1, 0}, true});  // across (i2,i0)
  mark_.assign(64, 0);
  last_ = 0;

  for (std::size_t k = 2; k < live.size(); ++k) {
    int p = live[k];
    if (p == i2) continue;
    insert(p);
  }
}

Triangulation Builder::take() {
  Triangulation out;
  out.points = pts_;
  out.weights = wts_;
  out.hidden.assign(pts_.size(), 0);
  for (std::size_t i = 0; i < pts_.size(); ++i) out.hidden[i] = hidden_[i];

  std::vector<int> remap(tris_.size(), -1);
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    if (tris_[i].alive && !tris_[i].ghost()) {
      remap[i] = static_cast<int>(out.tris.size());
      out.tris.push_back(tris_[i].v);
    }
  }
  out.adj.resize(out.tris.size());
  int idx = 0;
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    if (remap[i] < 0) continue;
    for (int k = 0; k < 3; ++k) {
      int n = tris_[i].nbr[k];
      out.adj[idx][k] = (n >= 0 && remap[n] >= 0) ? remap[n] : -1;
    }
    ++idx;
  }
  out.rebuild_edges();
  return out;
}

}  // namespace

void Triangulation::rebuild_edges() {
  edges_.clear();
  neighbors.assign(points.size(), {});
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) {
      // Hull edges appear in one direction only, so take both orientations
      // and dedup after normalizing.
      edges_.push_back(pack_edge(t[k], t[(k + 1) % 3]));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (std::uint64_t e : edges_) {
    int a = static_cast<int>(e >> 32);
    int b = static_cast<int>(e & 0xffffffffu);
    neighbors[a].push_back(b);
    neighbors[b].push_back(a);
  }
  for (auto& adjl : neighbors) std::sort(adjl.begin(), adjl.end());
}

bool Triangulation::has_edge(int i, int j) const {
  if (i == j) return false;
  std::uint64_t key = pack_edge(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), key);
}

Triangulation delaunay(const std::vector<Point2>& pts) {
  if (pts.size() < 3) throw DegenerateInput("delaunay: need at least 3 points");
  static const std::vector<double> no_weights;
  Builder b(pts, no_weights);
  b.run();
  return b.take();
}

Triangulation regular_triangulation(const std::vector<Point2>& pts,
                                    const std::vector<double>& weights) {
  if (pts.size() != weights.size()) {
    throw ValidationError("regular_triangulation: points/weights size mismatch");
  }
  if (pts.size() < 3) throw DegenerateInput("regular_triangulation: need at least 3 points");
  Builder b(pts, weights);
  b.run();
  return b.take();
}

}  // namespace ncp::geom
