#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncp/geom/point.hpp"

namespace ncp {

struct PackedCircle {
  std::string id;
  geom::Point2 pos{0.0, 0.0};
  double r = 0.0;
  int label = 0;
};

// Final artifact of any packing method. Radii always satisfy r_i = s * w_i
// for the producing run's weights; s is kept so constraint audits can recover
// the weights exactly.
struct PackingLayout {
  double scale = 1.0;
  std::vector<PackedCircle> circles;
  std::string method;
  std::uint64_t seed = 0;
  std::string config;
  // Serialized as 0.0 by default so identical seeds give byte-identical
  // files; real timings are reported on stdout instead.
  double runtime_seconds = 0.0;

  std::size_t size() const { return circles.size(); }
  std::vector<geom::Circle> as_circles() const;
  std::vector<int> labels() const;
};

// JSON round-trips to full float precision; serialization is deterministic
// (sorted keys, shortest round-trip number formatting).
std::string layout_to_json(const PackingLayout& layout);
PackingLayout layout_from_json(const std::string& text);
void save_layout(const PackingLayout& layout, const std::string& path);
PackingLayout load_layout(const std::string& path);

}  // namespace ncp
