#pragma once

#include <vector>

#include "ncp/geom/point.hpp"
#include "ncp/rng.hpp"

namespace ncp {

struct KMeansResult {
  std::vector<int> assignment;
  std::vector<geom::Point2> centers;
  double inertia = 0.0;
};

// Lloyd iterations with k-means++ seeding; best of `restarts` runs by
// inertia. Deterministic given the rng state. Empty clusters are reseeded to
// the point farthest from its current center.
KMeansResult kmeans(const std::vector<geom::Point2>& pts, int k, Rng& rng, int restarts = 10,
                    int max_iterations = 100);

// Mean silhouette over all points; singleton clusters contribute 0. k is the
// number of clusters present in `assignment`.
double mean_silhouette(const std::vector<geom::Point2>& pts, const std::vector<int>& assignment,
                       int k);

// k-means for each k in [k_lo, k_hi] (clamped to n - 1), returning the
// assignment with maximal mean silhouette; ties prefer smaller k.
KMeansResult kmeans_best_k(const std::vector<geom::Point2>& pts, int k_lo, int k_hi, Rng& rng,
                           int restarts = 10);

}  // namespace ncp
