#include "ncp/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncp/errors.hpp"

namespace ncp {

using geom::Point2;

namespace {

std::vector<Point2> seed_plusplus(const std::vector<Point2>& pts, int k, Rng& rng) {
  int n = static_cast<int>(pts.size());
  std::vector<Point2> centers;
  centers.reserve(k);
  centers.push_back(pts[rng.uniform_index(n)]);
  std::vector<double> d2(n, std::numeric_limits<double>::max());
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], dist2(pts[i], centers.back()));
      total += d2[i];
    }
    int pick = -1;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
      if (pick < 0) pick = n - 1;
    } else {
      // All points coincide with chosen centers; any pick works.
      pick = static_cast<int>(rng.uniform_index(n));
    }
    centers.push_back(pts[pick]);
  }
  return centers;
}

void assign_points(const std::vector<Point2>& pts, const std::vector<Point2>& centers,
                   std::vector<int>& assignment) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = std::numeric_limits<double>::max();
    int arg = 0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      double d = dist2(pts[i], centers[c]);
      if (d < best) {
        best = d;
        arg = static_cast<int>(c);
      }
    }
    assignment[i] = arg;
  }
}

KMeansResult lloyd_run(const std::vector<Point2>& pts, int k, Rng& rng, int max_iterations) {
  int n = static_cast<int>(pts.size());
  KMeansResult res;
  res.centers = seed_plusplus(pts, k, rng);
  res.assignment.assign(n, -1);
  std::vector<int> prev;
  for (int it = 0; it < max_iterations; ++it) {
    assign_points(pts, res.centers, res.assignment);
    if (res.assignment == prev) break;
    prev = res.assignment;
    std::vector<Point2> sums(k, {0, 0});
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      sums[res.assignment[i]] += pts[i];
      counts[res.assignment[i]] += 1;
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        res.centers[c] = sums[c] / counts[c];
        continue;
      }
      // Reseed an empty cluster to the point farthest from its center.
      double far = -1.0;
      int arg = 0;
      for (int i = 0; i < n; ++i) {
        double d = dist2(pts[i], res.centers[res.assignment[i]]);
        if (d > far) {
          far = d;
          arg = i;
        }
      }
      res.centers[c] = pts[arg];
    }
  }
  res.inertia = 0.0;
  for (int i = 0; i < n; ++i) res.inertia += dist2(pts[i], res.centers[res.assignment[i]]);
  return res;
}

}  // namespace

KMeansResult kmeans(const std::vector<Point2>& pts, int k, Rng& rng, int restarts,
                    int max_iterations) {
  int n = static_cast<int>(pts.size());
  if (k < 1 || k > n) throw ValidationError("kmeans: k must be in [1, n]");
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::max();
  for (int r = 0; r < restarts; ++r) {
    KMeansResult cur = lloyd_run(pts, k, rng, max_iterations);
    if (cur.inertia < best.inertia) best = std::move(cur);
  }
  return best;
}

double mean_silhouette(const std::vector<Point2>& pts, const std::vector<int>& assignment,
                       int k) {
  int n = static_cast<int>(pts.size());
  std::vector<int> counts(k, 0);
  for (int a : assignment) counts[a] += 1;
  double total = 0.0;
  std::vector<double> mean_to(k);
  for (int i = 0; i < n; ++i) {
    if (counts[assignment[i]] <= 1) continue;  // singleton: contributes 0
    std::fill(mean_to.begin(), mean_to.end(), 0.0);
    for (int j = 0; j < n; ++j) {
      if (j != i) mean_to[assignment[j]] += dist(pts[i], pts[j]);
    }
    double a = mean_to[assignment[i]] / (counts[assignment[i]] - 1);
    double b = std::numeric_limits<double>::max();
    for (int c = 0; c < k; ++c) {
      if (c != assignment[i] && counts[c] > 0) b = std::min(b, mean_to[c] / counts[c]);
    }
    double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / n;
}

KMeansResult kmeans_best_k(const std::vector<Point2>& pts, int k_lo, int k_hi, Rng& rng,
                           int restarts) {
  int n = static_cast<int>(pts.size());
  k_hi = std::min(k_hi, n - 1);
  k_lo = std::max(k_lo, 2);
  if (n < 3 || k_lo > k_hi) {
    // Too few points to choose: k = min(n, 2) without silhouette.
    return kmeans(pts, std::min(n, 2), rng, restarts);
  }
  KMeansResult best;
  double best_sil = -std::numeric_limits<double>::max();
  for (int k = k_lo; k <= k_hi; ++k) {
    KMeansResult cur = kmeans(pts, k, rng, restarts);
    double sil = mean_silhouette(pts, cur.assignment, k);
    if (sil > best_sil) {
      best_sil = sil;
      best = std::move(cur);
    }
  }
  return best;
}

}  // namespace ncp
