#pragma once

#include <string>
#include <vector>

#include "ncp/dataset.hpp"
#include "ncp/graph.hpp"
#include "ncp/layout.hpp"

namespace ncp {

struct MetricsReport {
  double np1 = 0.0;
  double np2 = 0.0;
  double compactness = 0.0;
  double convexity = 0.0;
  double balanced_index = 0.0;  // sum of the four metrics
  double runtime_seconds = 0.0;
  int empty_gamma_count = 0;  // (node, metric) pairs with an empty graph neighborhood
};

// Regular-triangulation graph of the final circles (power weights r^2),
// restricted to edges whose gap is at most 0.05 * scale. When the
// triangulation degenerates (collinear or coincident centers) every
// near-tangent pair is connected directly instead.
PlanarGraph eval_graph(const PackingLayout& layout);

// Mean Jaccard overlap of same-label graph neighborhoods against feature-kNN
// sets; nodes with an empty neighborhood contribute 0 and are counted.
double np1(const PlanarGraph& g, const Dataset& ds, int* empty_gamma_count = nullptr);
double np2(const PlanarGraph& g, const Dataset& ds, int* empty_gamma_count = nullptr);

// Total disk area over envelope area (outer boundary loops, gaps included).
double compactness(const PackingLayout& layout);

// Mean over label clusters of envelope area / disk convex-hull area;
// single-circle clusters score 1. Multi-component clusters use the boolean
// union of component envelopes over the union of component hulls.
double convexity(const PackingLayout& layout, const std::vector<int>& labels);

MetricsReport full_report(const PackingLayout& layout, const Dataset& ds, const PlanarGraph& g);
// Convenience overload evaluating on eval_graph(layout).
MetricsReport full_report(const PackingLayout& layout, const Dataset& ds);

std::string metrics_to_json(const MetricsReport& report);
MetricsReport metrics_from_json(const std::string& text);

}  // namespace ncp
