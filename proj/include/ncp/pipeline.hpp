#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ncp/dataset.hpp"
#include "ncp/errors.hpp"
#include "ncp/init.hpp"
#include "ncp/layout.hpp"
#include "ncp/pdlayout.hpp"

namespace ncp {

// NonConvergence carrying the best partial result so callers can still
// persist a layout (the CLI writes it and exits 3).
struct PackingNonConvergence : NonConvergence {
  PackingLayout layout;
  PackingNonConvergence(const std::string& msg, PackingLayout partial)
      : NonConvergence(msg), layout(std::move(partial)) {}
};

struct PipelineConfig {
  double alpha = 0.2;
  double beta = 1.0;
  int stage2_max_iterations = 100;
  int stage3_iterations = 1250;
  int fd_iterations = 10000;
  std::uint64_t seed = 0;
  // Empty selects automatically: the external embedding when present, plus
  // PCA and MDS when features are present; the candidate with the best
  // neighborhood-preservation degree wins (requires labels to score; without
  // labels the first candidate is used).
  std::vector<ProjectionMethod> projections;
};

// Embedding selection shared by the NCP pipeline and the FD baseline.
ProjectionChoice choose_embedding(const Dataset& ds, const PipelineConfig& cfg);

// Full three-stage pipeline: planar-graph initialization, power-diagram
// layout, force-directed refinement.
PackingLayout pack_ncp(const Dataset& ds, const PipelineConfig& cfg);
PackingLayout pack_fd(const Dataset& ds, const PipelineConfig& cfg);
PackingLayout pack_simifc(const Dataset& ds, const PipelineConfig& cfg);
// method is one of "ncp", "simifc", "fd".
PackingLayout pack(const Dataset& ds, const std::string& method, const PipelineConfig& cfg);

// Optimizer state -> serializable layout (used for final results and for
// persisting the partial state carried by LayoutNonConvergence).
PackingLayout state_to_layout(const LayoutState& st, const Dataset& ds, const std::string& method,
                              std::uint64_t seed, const std::string& config);

}  // namespace ncp
