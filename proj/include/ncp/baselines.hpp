#pragma once

#include <cstdint>
#include <vector>

#include "ncp/dataset.hpp"
#include "ncp/fdrefine.hpp"
#include "ncp/geom/point.hpp"
#include "ncp/layout.hpp"

namespace ncp {

// Similarity-aware front-chain packing: the first item sits at the origin,
// every later circle goes to the tangent position (against an adjacent
// front-chain pair) closest to the origin, and the item placed there is the
// unplaced one with the highest mean feature cosine to the two chain circles
// it will touch. Radii equal the weights (s = 1).
PackingLayout simifc(const Dataset& ds, std::uint64_t seed);

// Force-directed baseline: positions straight from the embedding, s set to
// the largest non-overlapping scale, then the stage-3 refinement with the
// given config (no power-diagram stage).
PackingLayout fd_baseline(const Dataset& ds, const std::vector<geom::Point2>& embedding,
                          const RefineConfig& cfg);

}  // namespace ncp
