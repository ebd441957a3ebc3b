#include "ncp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ncp/errors.hpp"
#include "ncp/rng.hpp"

namespace ncp {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& cell, const std::string& where) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || p != cell.data() + cell.size()) {
    throw ParseError(where + ": cannot parse number '" + cell + "'");
  }
  if (!std::isfinite(v)) throw ParseError(where + ": non-finite number '" + cell + "'");
  return v;
}

int parse_int(const std::string& cell, const std::string& where) {
  int v = 0;
  auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || p != cell.data() + cell.size()) {
    throw ParseError(where + ": cannot parse integer '" + cell + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

void validate_dataset(Dataset& ds) {
  if (ds.items.empty()) throw ValidationError("dataset: no items");
  int dim = -1;
  bool all_features = true;
  bool all_embeddings = true;
  for (std::size_t i = 0; i < ds.items.size(); ++i) {
    const DataItem& it = ds.items[i];
    std::string row = "item " + std::to_string(i) + " (id '" + it.id + "')";
    if (!(it.w > 0.0)) throw ValidationError(row + ": weight must be positive");
    if (!std::isfinite(it.w)) throw ValidationError(row + ": weight must be finite");
    if (it.features.empty() && !it.has_embedding) {
      throw ValidationError(row + ": needs features or an embedding");
    }
    if (it.features.empty()) {
      all_features = false;
    } else if (dim < 0) {
      dim = static_cast<int>(it.features.size());
    } else if (static_cast<int>(it.features.size()) != dim) {
      throw ValidationError(row + ": ragged features (" + std::to_string(it.features.size()) +
                            " vs " + std::to_string(dim) + ")");
    }
    if (!it.has_embedding) all_embeddings = false;
  }
  ds.features_present = all_features;
  ds.embeddings_present = all_embeddings;
  ds.feature_dim = all_features && dim > 0 ? dim : 0;
}

}  // namespace

std::vector<int> Dataset::labels() const {
  std::vector<int> out(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) out[i] = items[i].label;
  return out;
}

std::vector<double> Dataset::weights() const {
  std::vector<double> out(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) out[i] = items[i].w;
  return out;
}

std::vector<geom::Point2> Dataset::embeddings() const {
  std::vector<geom::Point2> out(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) out[i] = items[i].embedding;
  return out;
}

Dataset parse_dataset_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: empty input");
  std::vector<std::string> header = split_csv_line(line);

  int col_id = -1, col_w = -1, col_label = -1, col_x = -1, col_y = -1;
  std::vector<int> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string& h = header[c];
    int* slot = nullptr;
    if (h == "id") slot = &col_id;
    else if (h == "w") slot = &col_w;
    else if (h == "label") slot = &col_label;
    else if (h == "x") slot = &col_x;
    else if (h == "y") slot = &col_y;
    if (slot != nullptr) {
      if (*slot >= 0) throw ParseError("csv header: duplicate column '" + h + "'");
      *slot = static_cast<int>(c);
    } else if (!h.empty() && h[0] == 'f') {
      for (int fc : feature_cols) {
        if (header[fc] == h) throw ParseError("csv header: duplicate column '" + h + "'");
      }
      feature_cols.push_back(static_cast<int>(c));
    } else {
      throw ParseError("csv header: unknown column '" + h + "'");
    }
  }
  if (col_w < 0) throw ParseError("csv header: required column 'w' missing");
  if ((col_x >= 0) != (col_y >= 0)) {
    throw ParseError("csv header: embedding needs both 'x' and 'y'");
  }

  Dataset ds;
  ds.labels_present = col_label >= 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    std::string where = "csv line " + std::to_string(lineno);
    if (cells.size() != header.size()) {
      throw ParseError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(cells.size()));
    }
    DataItem it;
    it.id = col_id >= 0 ? cells[col_id] : std::to_string(ds.items.size());
    it.w = parse_double(cells[col_w], where + " column 'w'");
    if (col_label >= 0) it.label = parse_int(cells[col_label], where + " column 'label'");
    if (col_x >= 0) {
      it.embedding = {parse_double(cells[col_x], where + " column 'x'"),
                      parse_double(cells[col_y], where + " column 'y'")};
      it.has_embedding = true;
    }
    it.features.reserve(feature_cols.size());
    for (int c : feature_cols) {
      it.features.push_back(parse_double(cells[c], where + " column '" + header[c] + "'"));
    }
    ds.items.push_back(std::move(it));
  }
  validate_dataset(ds);
  return ds;
}

Dataset parse_dataset_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("items") || !j["items"].is_array()) {
    throw ParseError("json: expected object with an 'items' array");
  }
  Dataset ds;
  ds.labels_present = false;
  for (std::size_t i = 0; i < j["items"].size(); ++i) {
    const auto& ji = j["items"][i];
    std::string where = "json item " + std::to_string(i);
    if (!ji.is_object()) throw ParseError(where + ": expected object");
    DataItem it;
    if (!ji.contains("id") || !ji["id"].is_string()) {
      throw ParseError(where + ": 'id' string required");
    }
    it.id = ji["id"].get<std::string>();
    if (!ji.contains("w") || !ji["w"].is_number()) {
      throw ParseError(where + ": 'w' number required");
    }
    it.w = ji["w"].get<double>();
    if (ji.contains("label")) {
      if (!ji["label"].is_number_integer()) throw ParseError(where + ": 'label' must be integer");
      it.label = ji["label"].get<int>();
      ds.labels_present = true;
    }
    if (ji.contains("features")) {
      if (!ji["features"].is_array()) throw ParseError(where + ": 'features' must be an array");
      for (const auto& f : ji["features"]) {
        if (!f.is_number()) throw ParseError(where + ": feature entries must be numbers");
        it.features.push_back(f.get<double>());
      }
    }
    if (ji.contains("embedding")) {
      const auto& e = ji["embedding"];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError(where + ": 'embedding' must be [x, y]");
      }
      it.embedding = {e[0].get<double>(), e[1].get<double>()};
      it.has_embedding = true;
    }
    ds.items.push_back(std::move(it));
  }
  // Mixed labeled/unlabeled items would silently default; reject instead.
  if (ds.labels_present) {
    for (std::size_t i = 0; i < j["items"].size(); ++i) {
      if (!j["items"][i].contains("label")) {
        throw ParseError("json item " + std::to_string(i) + ": 'label' missing while other items have one");
      }
    }
  }
  validate_dataset(ds);
  return ds;
}

std::string dataset_to_json(const Dataset& ds) {
  nlohmann::json items = nlohmann::json::array();
  for (const DataItem& it : ds.items) {
    nlohmann::json ji;
    ji["id"] = it.id;
    ji["w"] = it.w;
    if (ds.labels_present) ji["label"] = it.label;
    if (!it.features.empty()) ji["features"] = it.features;
    if (it.has_embedding) ji["embedding"] = {it.embedding.x, it.embedding.y};
    items.push_back(std::move(ji));
  }
  nlohmann::json root;
  root["items"] = std::move(items);
  return root.dump(2) + "\n";
}

Dataset load_dataset(const std::string& path, DatasetFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return format == DatasetFormat::kCsv ? parse_dataset_csv(buf.str())
                                       : parse_dataset_json(buf.str());
}

void save_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file '" + path + "'");
  out << dataset_to_json(ds);
}

NeighborSet feature_knn(const Dataset& ds, int i, int k) {
  int n = static_cast<int>(ds.size());
  if (i < 0 || i >= n) throw IndexOutOfRange("feature_knn: index out of range");
  if (!ds.features_present) throw MissingFeatures("feature_knn: dataset has no features");
  if (k < 1 || k > n - 1) {
    throw ValidationError("feature_knn: k must be in [1, n-1], got " + std::to_string(k));
  }
  const std::vector<double>& fi = ds.items[i].features;
  std::vector<std::pair<double, int>> order;
  order.reserve(n - 1);
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const std::vector<double>& fj = ds.items[j].features;
    double d2 = 0.0;
    for (std::size_t d = 0; d < fi.size(); ++d) {
      double diff = fi[d] - fj[d];
      d2 += diff * diff;
    }
    order.emplace_back(d2, j);
  }
  std::nth_element(order.begin(), order.begin() + (k - 1), order.end());
  std::sort(order.begin(), order.begin() + k);
  NeighborSet out;
  out.anchor = i;
  out.members.reserve(k);
  for (int t = 0; t < k; ++t) out.members.push_back(order[t].second);
  std::sort(out.members.begin(), out.members.end());
  return out;
}

std::vector<double> sample_radii(int n, const RadiiSpec& spec) {
  if (n < 1) throw ValidationError("sample_radii: n must be >= 1");
  if (!(spec.lo > 0.0) || !(spec.lo <= spec.hi)) {
    throw ValidationError("sample_radii: need 0 < lo <= hi");
  }
  Rng rng(spec.seed);
  std::vector<double> out(n);
  for (double& v : out) v = rng.uniform(spec.lo, spec.hi);
  return out;
}

void normalize_zscore(Dataset& ds) {
  if (!ds.features_present) throw MissingFeatures("normalize_zscore: dataset has no features");
  int dim = ds.feature_dim;
  int n = static_cast<int>(ds.size());
  for (int d = 0; d < dim; ++d) {
    double mean = 0.0;
    for (const DataItem& it : ds.items) mean += it.features[d];
    mean /= n;
    double var = 0.0;
    for (const DataItem& it : ds.items) {
      double diff = it.features[d] - mean;
      var += diff * diff;
    }
    double sd = std::sqrt(var / n);
    for (DataItem& it : ds.items) {
      it.features[d] = sd > 0.0 ? (it.features[d] - mean) / sd : 0.0;
    }
  }
}

}  // namespace ncp
