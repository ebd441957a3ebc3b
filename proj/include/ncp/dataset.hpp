#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncp/geom/point.hpp"
#include "ncp/graph.hpp"

namespace ncp {

struct DataItem {
  std::string id;
  double w = 1.0;
  int label = 0;
  std::vector<double> features;  // empty when the item carries none
  geom::Point2 embedding{0.0, 0.0};
  bool has_embedding = false;
};

// Validated input table. Presence flags are dataset-wide: features_present
// means every item carries a feature vector of the shared dimension;
// labels_present records whether labels came from the source (absent labels
// default to a single cluster 0 but keep the flag false so metrics can
// reject).
struct Dataset {
  std::vector<DataItem> items;
  bool labels_present = false;
  bool features_present = false;
  bool embeddings_present = false;
  int feature_dim = 0;

  std::size_t size() const { return items.size(); }
  std::vector<int> labels() const;
  std::vector<double> weights() const;
  std::vector<geom::Point2> embeddings() const;
};

enum class DatasetFormat { kCsv, kJson };

// File loaders report the path on failure; string parsers report line/field.
Dataset load_dataset(const std::string& path, DatasetFormat format);
Dataset parse_dataset_csv(const std::string& text);
Dataset parse_dataset_json(const std::string& text);
std::string dataset_to_json(const Dataset& ds);
void save_dataset(const Dataset& ds, const std::string& path);

// The k items nearest to item i in Euclidean feature distance, excluding i;
// ties broken by lower index. Requires 1 <= k <= n - 1.
NeighborSet feature_knn(const Dataset& ds, int i, int k);

struct RadiiSpec {
  double lo = 0.1;
  double hi = 1.0;
  std::uint64_t seed = 0;
};

// n i.i.d. draws from uniform(lo, hi), reproducible under seed.
std::vector<double> sample_radii(int n, const RadiiSpec& spec);

// Per-dimension z-score over all items; zero-variance dimensions become 0.
void normalize_zscore(Dataset& ds);

}  // namespace ncp
