#include "ncp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "json.hpp"
#include "ncp/errors.hpp"
#include "ncp/init.hpp"
#include "ncp/pdlayout.hpp"

namespace ncp {

using geom::Point2;

namespace {

constexpr double kGoldenAngle = 2.39996322972865332;

// Center of a circle of radius r externally tangent to both a and b, on the
// side farther from `away` (ties: larger y, then larger x).
std::optional<Point2> tangent_position(const Point2& pa, double ra, const Point2& pb, double rb,
                                       double r, const Point2& away) {
  double big_a = ra + r;
  double big_b = rb + r;
  double d = dist(pa, pb);
  if (d <= 0.0 || d > big_a + big_b || d < std::fabs(big_a - big_b)) return std::nullopt;
  double along = (big_a * big_a - big_b * big_b + d * d) / (2.0 * d);
  double h2 = big_a * big_a - along * along;
  if (h2 < 0.0) {
    if (h2 < -1e-9 * big_a * big_a) return std::nullopt;
    h2 = 0.0;
  }
  double h = std::sqrt(h2);
  Point2 u = (pb - pa) / d;
  Point2 base = pa + u * along;
  Point2 n = perp(u);
  Point2 c1 = base + n * h;
  Point2 c2 = base - n * h;
  double d1 = dist2(c1, away);
  double d2 = dist2(c2, away);
  if (d1 != d2) return d1 > d2 ? c1 : c2;
  if (c1.y != c2.y) return c1.y > c2.y ? c1 : c2;
  return c1.x >= c2.x ? c1 : c2;
}

}  // namespace

PackingLayout simifc(const Dataset& ds, std::uint64_t seed) {
  if (!ds.features_present) throw MissingFeatures("simifc requires features");
  int n = static_cast<int>(ds.items.size());
  if (n == 0) throw ValidationError("simifc: empty dataset");

  std::vector<double> w = ds.weights();
  std::vector<double> fnorm(n);
  for (int i = 0; i < n; ++i) {
    double s2 = 0.0;
    for (double f : ds.items[i].features) s2 += f * f;
    fnorm[i] = std::sqrt(s2);
  }
  auto cosine = [&](int a, int b) {
    if (fnorm[a] == 0.0 || fnorm[b] == 0.0) return 0.0;
    const auto& fa = ds.items[a].features;
    const auto& fb = ds.items[b].features;
    double dot = 0.0;
    for (std::size_t k = 0; k < fa.size(); ++k) dot += fa[k] * fb[k];
    return dot / (fnorm[a] * fnorm[b]);
  };

  std::vector<Point2> pos(n, {0.0, 0.0});
  std::vector<char> done(n, 0);
  std::vector<int> chain;  // circular walk of placed item indices
  Point2 placed_sum{0.0, 0.0};
  int placed = 0;

  auto place = [&](int item, const Point2& p) {
    pos[item] = p;
    done[item] = 1;
    placed_sum += p;
    ++placed;
  };
  auto overlaps_any = [&](const Point2& p, double r) {
    for (int j = 0; j < n; ++j) {
      if (!done[j]) continue;
      double limit = r + w[j];
      if (dist(p, pos[j]) < limit - 1e-9 * limit) return true;
    }
    return false;
  };

  place(0, {0.0, 0.0});
  if (n >= 2) {
    int second = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 1; j < n; ++j) {
      double c = cosine(j, 0);
      if (c > best) {
        best = c;
        second = j;
      }
    }
    place(second, {w[0] + w[second], 0.0});
    chain = {0, second};
  }

  while (placed < n) {
    Point2 centroid = placed_sum / static_cast<double>(placed);
    double mean_r = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!done[j]) mean_r += w[j];
    }
    mean_r /= static_cast<double>(n - placed);

    // Rank adjacent chain pairs by how close a reference-radius tangent
    // placement would sit to the origin.
    int m = static_cast<int>(chain.size());
    std::vector<std::pair<double, int>> slots;
    for (int t = 0; t < m; ++t) {
      int a = chain[t];
      int b = chain[(t + 1) % m];
      auto cand = tangent_position(pos[a], w[a], pos[b], w[b], mean_r, centroid);
      if (cand) slots.emplace_back(norm(*cand), t);
    }
    std::sort(slots.begin(), slots.end());

    bool accepted = false;
    for (const auto& [d0, t] : slots) {
      int a = chain[t];
      int b = chain[(t + 1) % m];
      int item = -1;
      double best = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        if (done[j]) continue;
        double score = 0.5 * (cosine(j, a) + cosine(j, b));
        if (score > best) {
          best = score;
          item = j;
        }
      }
      auto p = tangent_position(pos[a], w[a], pos[b], w[b], w[item], centroid);
      if (!p || overlaps_any(*p, w[item])) continue;
      place(item, *p);
      chain.insert(chain.begin() + t + 1, item);
      accepted = true;
      break;
    }
    if (accepted) continue;

    // Every tangent slot conflicts: park the next circle on the enclosing
    // ring, guaranteed overlap-free, next to the chain circle nearest the
    // origin.
    int near_slot = 0;
    for (int t = 1; t < m; ++t) {
      if (norm(pos[chain[t]]) < norm(pos[chain[near_slot]])) near_slot = t;
    }
    int anchor = chain[near_slot];
    int item = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (done[j]) continue;
      double score = cosine(j, anchor);
      if (score > best) {
        best = score;
        item = j;
      }
    }
    double ring = 0.0;
    for (int j = 0; j < n; ++j) {
      if (done[j]) ring = std::max(ring, norm(pos[j]) + w[j]);
    }
    double ang = kGoldenAngle * placed;
    place(item, Point2{std::cos(ang), std::sin(ang)} * (ring + w[item]));
    chain.insert(chain.begin() + near_slot + 1, item);
  }

  PackingLayout out;
  out.scale = 1.0;
  out.method = "simifc";
  out.seed = seed;
  nlohmann::ordered_json cfg;
  cfg["scoring"] = "adjacent-cosine";
  out.config = cfg.dump();
  out.circles.resize(n);
  for (int i = 0; i < n; ++i) {
    out.circles[i] = {ds.items[i].id, pos[i], w[i], ds.items[i].label};
  }
  return out;
}

PackingLayout fd_baseline(const Dataset& ds, const std::vector<Point2>& embedding,
                          const RefineConfig& cfg) {
  int n = static_cast<int>(ds.items.size());
  if (n == 0) throw ValidationError("fd_baseline: empty dataset");
  if (embedding.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("fd_baseline: embedding size mismatch");
  }

  LayoutState st;
  st.graph = init_planar_graph(embedding);
  st.positions = st.graph.positions();
  st.weights = ds.weights();
  Point2 c{0.0, 0.0};
  for (const Point2& p : st.positions) c += p;
  st.center = c / static_cast<double>(n);

  if (n == 1) {
    st.s = 1.0;
  } else {
    double s = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        s = std::min(s, dist(st.positions[i], st.positions[j]) / (st.weights[i] + st.weights[j]));
      }
    }
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw DegenerateInput("fd_baseline: coincident embedding points");
    }
    st.s = s;
  }

  std::vector<int> labels =
      ds.labels_present ? ds.labels() : std::vector<int>(static_cast<std::size_t>(n), 0);
  LayoutState final_state = run_stage3(std::move(st), labels, cfg);

  PackingLayout out;
  out.scale = final_state.s;
  out.method = "fd";
  out.seed = cfg.seed;
  nlohmann::ordered_json j;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["iterations"] = cfg.iterations;
  out.config = j.dump();
  out.circles.resize(n);
  for (int i = 0; i < n; ++i) {
    out.circles[i] = {ds.items[i].id, final_state.positions[i], final_state.radius(i),
                      ds.items[i].label};
  }
  return out;
}

}  // namespace ncp
