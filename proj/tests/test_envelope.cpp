#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ncp/geom/envelope.hpp"
#include "ncp/geom/point.hpp"
#include "ncp/geom/polygon.hpp"
#include "ncp/rng.hpp"
#include "support/oracles.hpp"

using namespace ncp;
using namespace ncp::geom;

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Area of the intersection lens of two circles.
double lens_area(const Circle& a, const Circle& b) {
  double d = dist(a.center, b.center);
  if (d >= a.r + b.r) return 0.0;
  if (d <= std::fabs(a.r - b.r)) {
    double r = std::min(a.r, b.r);
    return kPi * r * r;
  }
  double r1 = a.r, r2 = b.r;
  double a1 = r1 * r1 * std::acos((d * d + r1 * r1 - r2 * r2) / (2 * d * r1));
  double a2 = r2 * r2 * std::acos((d * d + r2 * r2 - r1 * r1) / (2 * d * r2));
  double tri = 0.5 * std::sqrt(std::max(0.0, (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) *
                                                 (d + r1 + r2)));
  return a1 + a2 - tri;
}

double outer_area(const EnvelopeResult& env) {
  double a = 0.0;
  for (int li : env.outer) a += env.loops[li].signed_area;
  return a;
}

}  // namespace

TEST_CASE("single circle envelope") {
  std::vector<Circle> cs{{{2, 3}, 1.5}};
  EnvelopeResult env = circle_union_envelope_full(cs);
  REQUIRE(env.loops.size() == 1);
  CHECK(env.outer.size() == 1);
  CHECK(env.abandoned_walks == 0);
  // Area-exact polygonization: the polygon area equals pi r^2 exactly.
  CHECK(env.loops[0].signed_area == doctest::Approx(kPi * 1.5 * 1.5).epsilon(1e-12));
  CHECK(env.union_area == doctest::Approx(kPi * 1.5 * 1.5).epsilon(1e-12));
  CHECK(env.loops[0].contributors == std::vector<int>{0});
}

TEST_CASE("disjoint circles make separate loops") {
  std::vector<Circle> cs{{{0, 0}, 1}, {{5, 0}, 2}};
  EnvelopeResult env = circle_union_envelope_full(cs);
  REQUIRE(env.loops.size() == 2);
  CHECK(env.outer.size() == 2);
  CHECK(env.union_area == doctest::Approx(kPi * (1 + 4)).epsilon(1e-12));
}

TEST_CASE("contained circle is ignored") {
  std::vector<Circle> cs{{{0, 0}, 3}, {{0.5, 0}, 1}};
  EnvelopeResult env = circle_union_envelope_full(cs);
  REQUIRE(env.loops.size() == 1);
  CHECK(env.loops[0].contributors == std::vector<int>{0});
  CHECK(env.union_area == doctest::Approx(kPi * 9).epsilon(1e-12));
  // Equal circles: the lower index wins containment, one loop remains.
  std::vector<Circle> eq{{{1, 1}, 2}, {{1, 1}, 2}, {{1, 1}, 2}};
  EnvelopeResult env2 = circle_union_envelope_full(eq);
  REQUIRE(env2.loops.size() == 1);
  CHECK(env2.loops[0].contributors == std::vector<int>{0});
}

TEST_CASE("two overlapping circles against lens formula") {
  Rng rng(23);
  for (int it = 0; it < 30; ++it) {
    Circle a{{0, 0}, rng.uniform(0.5, 2.0)};
    Circle b{{rng.uniform(0.2, 2.5), 0}, rng.uniform(0.5, 2.0)};
    double d = dist(a.center, b.center);
    if (d >= a.r + b.r - 1e-3 || d <= std::fabs(a.r - b.r) + 1e-3) continue;
    double want = a.area() + b.area() - lens_area(a, b);
    EnvelopeResult env = circle_union_envelope_full({a, b}, 1e-4 * std::max(a.r, b.r));
    CHECK(env.union_area == doctest::Approx(want).epsilon(1e-6));
    REQUIRE(env.outer.size() == 1);
    std::vector<int> contrib = env.loops[env.outer[0]].contributors;
    std::sort(contrib.begin(), contrib.end());
    CHECK(contrib == std::vector<int>{0, 1});
  }
}

TEST_CASE("three tangent unit circles: outer loop and gap loop") {
  // Centers (0,0), (2,0), (1, sqrt3): envelope area 3*pi + sqrt3 - pi/2,
  // union 3*pi, inner gap -(sqrt3 - pi/2).
  std::vector<Circle> cs{{{0, 0}, 1}, {{2, 0}, 1}, {{1, kSqrt3}, 1}};
  EnvelopeResult env = circle_union_envelope_full(cs, 1e-4);
  REQUIRE(env.loops.size() == 2);
  REQUIRE(env.outer.size() == 1);
  CHECK(env.abandoned_walks == 0);
  double outer = outer_area(env);
  CHECK(outer == doctest::Approx(9.586032441543362).epsilon(1e-7));
  CHECK(env.union_area == doctest::Approx(3 * kPi).epsilon(1e-7));
  // The hole loop area is negative with the expected magnitude.
  int hole = env.outer[0] == 0 ? 1 : 0;
  CHECK(env.loops[hole].signed_area ==
        doctest::Approx(-(kSqrt3 - kPi / 2)).epsilon(1e-6));
  std::vector<int> contrib = env.loops[env.outer[0]].contributors;
  std::sort(contrib.begin(), contrib.end());
  CHECK(contrib == std::vector<int>{0, 1, 2});
}

TEST_CASE("hexagonal seven tangent circles") {
  // Unit circles: one at the origin, six at distance 2 in a hexagon.
  // Envelope area 4*pi + 6*sqrt3, union 7*pi; the centre circle does not
  // touch the outer loop.
  std::vector<Circle> cs{{{0, 0}, 1}};
  for (int k = 0; k < 6; ++k) {
    double a = kTwoPi * k / 6.0;
    cs.push_back({{2 * std::cos(a), 2 * std::sin(a)}, 1.0});
  }
  EnvelopeResult env = circle_union_envelope_full(cs, 1e-4);
  CHECK(outer_area(env) == doctest::Approx(4 * kPi + 6 * kSqrt3).epsilon(1e-7));
  CHECK(env.union_area == doctest::Approx(7 * kPi).epsilon(1e-6));
  REQUIRE(env.outer.size() == 1);
  std::vector<int> contrib = env.loops[env.outer[0]].contributors;
  std::sort(contrib.begin(), contrib.end());
  CHECK(contrib == std::vector<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("two tangent circles walk through the cusp") {
  std::vector<Circle> cs{{{0, 0}, 1}, {{2, 0}, 1}};
  EnvelopeResult env = circle_union_envelope_full(cs, 1e-4);
  REQUIRE(env.loops.size() == 1);
  CHECK(env.abandoned_walks == 0);
  CHECK(env.union_area == doctest::Approx(2 * kPi).epsilon(1e-7));
  std::vector<int> contrib = env.loops[0].contributors;
  std::sort(contrib.begin(), contrib.end());
  CHECK(contrib == std::vector<int>{0, 1});
}

TEST_CASE("random unions match monte carlo") {
  for (std::uint64_t seed : {40ull, 41ull, 42ull}) {
    Rng rng(seed);
    int n = 1 + static_cast<int>(rng.uniform_index(12));
    std::vector<Circle> cs;
    for (int i = 0; i < n; ++i) {
      cs.push_back({{rng.uniform(0, 6), rng.uniform(0, 6)}, rng.uniform(0.3, 1.4)});
    }
    EnvelopeResult env = circle_union_envelope_full(cs, 2e-4);
    double mc = oracle::union_area_mc(cs, seed * 997 + 1, 2'000'000);
    // MC with 2M samples over a ~8x8 box: stderr well under 0.5%.
    CHECK(env.union_area == doctest::Approx(mc).epsilon(0.01));
    CHECK(env.abandoned_walks == 0);
  }
}

TEST_CASE("halving arc tolerance shrinks the discretization error") {
  std::vector<Circle> cs{{{0, 0}, 1}, {{1.2, 0.3}, 0.9}, {{0.5, 1.1}, 0.7}};
  double exact_guess = circle_union_envelope_full(cs, 1e-6).union_area;
  double e1 = std::fabs(circle_union_envelope_full(cs, 4e-3).union_area - exact_guess);
  double e2 = std::fabs(circle_union_envelope_full(cs, 2e-3).union_area - exact_guess);
  double e3 = std::fabs(circle_union_envelope_full(cs, 1e-3).union_area - exact_guess);
  CHECK(e2 <= e1 + 1e-12);
  CHECK(e3 <= e2 + 1e-12);
}

TEST_CASE("circle polygon area is exact at any tolerance") {
  for (double tol : {1e-2, 1e-3, 1e-4}) {
    Polygon p = circle_polygon({{1, 2}, 0.8}, tol);
    CHECK(p.area() == doctest::Approx(kPi * 0.64).epsilon(1e-12));
  }
}

TEST_CASE("disk hull of two unit circles") {
  std::vector<Circle> cs{{{0, 0}, 1}, {{2, 0}, 1}};
  DiskHull h = disk_hull(cs, 1e-3);
  REQUIRE(h.order.size() == 2);
  // Stadium: area pi + 2*2.
  CHECK(h.boundary.area() == doctest::Approx(kPi + 4.0).epsilon(1e-6));
  REQUIRE(h.bridges.size() == 2);
  // The lower bridge tangent points are (0,-1) and (2,-1).
  bool found = false;
  for (const auto& b : h.bridges) {
    if (std::fabs(b.a.y + 1.0) < 1e-9 && std::fabs(b.b.y + 1.0) < 1e-9) {
      found = true;
      CHECK(std::fabs(b.a.x - 0.0) + std::fabs(b.b.x - 2.0) < 1e-9);
    }
  }
  CHECK(found);
}

TEST_CASE("disk hull of three tangent unit circles") {
  std::vector<Circle> cs{{{0, 0}, 1}, {{2, 0}, 1}, {{1, kSqrt3}, 1}};
  DiskHull h = disk_hull(cs, 1e-4);
  CHECK(h.order.size() == 3);
  // Hull area: sqrt3 (center triangle) + 3*2 (side rectangles) + pi (three
  // 120-degree sectors).
  CHECK(h.boundary.area() == doctest::Approx(kSqrt3 + 6 + kPi).epsilon(1e-6));
}

TEST_CASE("disk hull with interior circles") {
  std::vector<Circle> cs{{{0, 0}, 1}, {{4, 0}, 1}, {{2, 3}, 1}, {{2, 1}, 0.4}};
  DiskHull h = disk_hull(cs, 1e-3);
  CHECK(h.order.size() == 3);
  CHECK(std::find(h.order.begin(), h.order.end(), 3) == h.order.end());
  // A dominant circle swallows the rest.
  std::vector<Circle> dom{{{0, 0}, 5}, {{1, 0}, 1}, {{0, 1}, 0.5}};
  DiskHull h2 = disk_hull(dom, 1e-3);
  CHECK(h2.order == std::vector<int>{0});
  CHECK(h2.boundary.area() == doctest::Approx(kPi * 25).epsilon(1e-4));
}

TEST_CASE("disk hull mixed radii matches sampled convex hull") {
  Rng rng(91);
  for (int it = 0; it < 10; ++it) {
    int n = 3 + static_cast<int>(rng.uniform_index(8));
    std::vector<Circle> cs;
    for (int i = 0; i < n; ++i) {
      cs.push_back({{rng.uniform(0, 5), rng.uniform(0, 5)}, rng.uniform(0.2, 1.2)});
    }
    DiskHull h = disk_hull(cs, 1e-4);
    // Oracle: convex hull of dense boundary samples.
    std::vector<Point2> samples;
    for (const Circle& c : cs) {
      for (int k = 0; k < 2000; ++k) {
        double a = kTwoPi * k / 2000.0;
        samples.push_back(c.center + Point2{c.r * std::cos(a), c.r * std::sin(a)});
      }
    }
    Polygon ref = convex_hull(samples);
    CHECK(h.boundary.area() == doctest::Approx(ref.area()).epsilon(1e-4));
    // Every circle lies inside the hull.
    for (const Circle& c : cs) {
      CHECK(h.boundary.signed_distance(c.center) > c.r - 1e-4);
    }
  }
}
