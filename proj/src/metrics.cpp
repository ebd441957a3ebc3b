#include "ncp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "json.hpp"
#include "ncp/errors.hpp"
#include "ncp/geom/envelope.hpp"
#include "ncp/geom/triangulation.hpp"
#include "ncp/init.hpp"

namespace ncp {

using geom::Circle;
using geom::Point2;
using geom::Polygon;

namespace {

namespace bg = boost::geometry;
using BoostPoint = bg::model::d2::point_xy<double>;
using BoostPolygon = bg::model::polygon<BoostPoint>;
using BoostMulti = bg::model::multi_polygon<BoostPolygon>;

BoostPolygon to_boost(const Polygon& poly) {
  BoostPolygon out;
  for (const Point2& p : poly.pts) bg::append(out.outer(), BoostPoint(p.x, p.y));
  bg::correct(out);
  return out;
}

// Area of the union of simple polygons. Disjoint bounding boxes skip the
// boolean entirely; unions of pinched (self-touching) loops that the boolean
// kernel rejects fall back to the additive sum.
double union_area(const std::vector<Polygon>& polys) {
  if (polys.empty()) return 0.0;
  if (polys.size() == 1) return polys[0].area();
  bool bbox_disjoint = true;
  std::vector<std::array<double, 4>> boxes;
  for (const Polygon& p : polys) {
    std::array<double, 4> b = {1e300, 1e300, -1e300, -1e300};
    for (const Point2& q : p.pts) {
      b[0] = std::min(b[0], q.x);
      b[1] = std::min(b[1], q.y);
      b[2] = std::max(b[2], q.x);
      b[3] = std::max(b[3], q.y);
    }
    boxes.push_back(b);
  }
  for (std::size_t i = 0; i < boxes.size() && bbox_disjoint; ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      bool apart = boxes[i][2] < boxes[j][0] || boxes[j][2] < boxes[i][0] ||
                   boxes[i][3] < boxes[j][1] || boxes[j][3] < boxes[i][1];
      if (!apart) {
        bbox_disjoint = false;
        break;
      }
    }
  }
  double sum = 0.0;
  for (const Polygon& p : polys) sum += p.area();
  if (bbox_disjoint) return sum;
  try {
    BoostMulti acc;
    for (const Polygon& p : polys) {
      BoostMulti next;
      bg::union_(acc, to_boost(p), next);
      acc = std::move(next);
    }
    double a = bg::area(acc);
    if (std::isfinite(a) && a > 0.0) return a;
  } catch (...) {
    // fall through to the additive estimate
  }
  return sum;
}

double np_metric(const PlanarGraph& g, const Dataset& ds, int hop, int* empty_gamma_count) {
  int local = 0;
  double value = np_degree_k(g, ds, hop, &local);
  if (empty_gamma_count) *empty_gamma_count = local;
  return value;
}

}  // namespace

PlanarGraph eval_graph(const PackingLayout& layout) {
  int n = static_cast<int>(layout.size());
  std::vector<Point2> centers(n);
  std::vector<double> weights(n);
  for (int i = 0; i < n; ++i) {
    centers[i] = layout.circles[i].pos;
    weights[i] = layout.circles[i].r * layout.circles[i].r;
  }
  double max_gap = 0.05 * layout.scale;
  auto near_tangent = [&](int i, int j) {
    return dist(centers[i], centers[j]) - layout.circles[i].r - layout.circles[j].r <= max_gap;
  };
  std::vector<std::pair<int, int>> edges;
  if (n >= 3) {
    try {
      geom::Triangulation tri = geom::regular_triangulation(centers, weights);
      for (std::uint64_t packed : tri.packed_edges()) {
        int i = static_cast<int>(packed >> 32);
        int j = static_cast<int>(packed & 0xffffffffu);
        if (near_tangent(i, j)) edges.emplace_back(i, j);
      }
      return PlanarGraph::from_edges(std::move(centers), edges);
    } catch (const DegenerateInput&) {
      edges.clear();
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (near_tangent(i, j)) edges.emplace_back(i, j);
    }
  }
  return PlanarGraph::from_edges(std::move(centers), edges);
}

double np1(const PlanarGraph& g, const Dataset& ds, int* empty_gamma_count) {
  return np_metric(g, ds, 1, empty_gamma_count);
}

double np2(const PlanarGraph& g, const Dataset& ds, int* empty_gamma_count) {
  return np_metric(g, ds, 2, empty_gamma_count);
}

double compactness(const PackingLayout& layout) {
  if (layout.size() == 0) throw ValidationError("compactness: empty layout");
  std::vector<Circle> circles = layout.as_circles();
  geom::EnvelopeResult env = geom::circle_union_envelope_full(circles);
  double envelope_area = 0.0;
  for (int li : env.outer) envelope_area += env.loops[li].signed_area;
  if (envelope_area <= 0.0) throw DegenerateInput("compactness: empty envelope");

  // Disjoint interiors let the numerator be the exact disk-area sum; any
  // overlapping pair switches it to the polygonized union.
  double tol = 1e-6 * layout.scale;
  bool disjoint = true;
  for (std::size_t i = 0; i < circles.size() && disjoint; ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      if (dist(circles[i].center, circles[j].center) < circles[i].r + circles[j].r - tol) {
        disjoint = false;
        break;
      }
    }
  }
  double covered = 0.0;
  if (disjoint) {
    for (const Circle& c : circles) covered += geom::kPi * c.r * c.r;
  } else {
    covered = env.union_area;
  }
  return std::clamp(covered / envelope_area, 0.0, 1.0);
}

double convexity(const PackingLayout& layout, const std::vector<int>& labels) {
  if (layout.size() == 0) throw ValidationError("convexity: empty layout");
  if (labels.size() != layout.size()) throw ValidationError("convexity: labels size mismatch");
  std::vector<Circle> circles = layout.as_circles();

  std::map<int, std::vector<int>> clusters;
  for (std::size_t i = 0; i < labels.size(); ++i) clusters[labels[i]].push_back(static_cast<int>(i));

  double total = 0.0;
  for (const auto& [label, members] : clusters) {
    if (members.size() == 1) {
      total += 1.0;
      continue;
    }
    std::vector<Circle> cluster;
    cluster.reserve(members.size());
    for (int i : members) cluster.push_back(circles[i]);
    geom::EnvelopeResult env = geom::circle_union_envelope_full(cluster);

    // One hull per connected component (= one per outer loop), then boolean
    // union in case hulls of separate components overlap.
    std::vector<Polygon> outer_polys;
    std::vector<Polygon> hull_polys;
    for (int li : env.outer) {
      outer_polys.push_back(env.loops[li].boundary);
      std::vector<Circle> component;
      for (int c : env.loops[li].contributors) component.push_back(cluster[c]);
      hull_polys.push_back(geom::disk_hull(component).boundary);
    }
    double envelope_area = union_area(outer_polys);
    double hull_area = union_area(hull_polys);
    if (hull_area <= 0.0) {
      total += 1.0;  // degenerate cluster (zero-area hull)
      continue;
    }
    total += std::clamp(envelope_area / hull_area, 0.0, 1.0);
  }
  return total / static_cast<double>(clusters.size());
}

MetricsReport full_report(const PackingLayout& layout, const Dataset& ds, const PlanarGraph& g) {
  if (static_cast<std::size_t>(g.node_count()) != layout.size() || layout.size() != ds.items.size()) {
    throw ValidationError("full_report: layout, dataset, and graph sizes differ");
  }
  MetricsReport r;
  int empty1 = 0;
  int empty2 = 0;
  r.np1 = np1(g, ds, &empty1);
  r.np2 = np2(g, ds, &empty2);
  r.empty_gamma_count = empty1 + empty2;
  r.compactness = compactness(layout);
  r.convexity = convexity(layout, layout.labels());
  r.balanced_index = r.np1 + r.np2 + r.compactness + r.convexity;
  r.runtime_seconds = layout.runtime_seconds;
  return r;
}

MetricsReport full_report(const PackingLayout& layout, const Dataset& ds) {
  return full_report(layout, ds, eval_graph(layout));
}

std::string metrics_to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["np1"] = report.np1;
  j["np2"] = report.np2;
  j["compactness"] = report.compactness;
  j["convexity"] = report.convexity;
  j["balanced_index"] = report.balanced_index;
  j["runtime_seconds"] = report.runtime_seconds;
  j["empty_gamma_count"] = report.empty_gamma_count;
  return j.dump(2) + "\n";
}

MetricsReport metrics_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("metrics JSON: ") + e.what());
  }
  MetricsReport r;
  try {
    r.np1 = j.at("np1").get<double>();
    r.np2 = j.at("np2").get<double>();
    r.compactness = j.at("compactness").get<double>();
    r.convexity = j.at("convexity").get<double>();
    r.balanced_index = j.at("balanced_index").get<double>();
    r.runtime_seconds = j.value("runtime_seconds", 0.0);
    r.empty_gamma_count = j.value("empty_gamma_count", 0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("metrics JSON: ") + e.what());
  }
  return r;
}

}  // namespace ncp
