#include "ncp/pipeline.hpp"

#include <utility>

#include "json.hpp"
#include "ncp/baselines.hpp"
#include "ncp/errors.hpp"
#include "ncp/fdrefine.hpp"

namespace ncp {

namespace {

std::vector<int> labels_or_zero(const Dataset& ds) {
  if (ds.labels_present) return ds.labels();
  return std::vector<int>(ds.items.size(), 0);
}

std::string ncp_config_json(const PipelineConfig& cfg, const ProjectionChoice& choice) {
  nlohmann::ordered_json j;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["projection"] = projection_name(choice.method.kind);
  j["stage2_max_iterations"] = cfg.stage2_max_iterations;
  j["stage3_iterations"] = cfg.stage3_iterations;
  return j.dump();
}

}  // namespace

ProjectionChoice choose_embedding(const Dataset& ds, const PipelineConfig& cfg) {
  std::vector<ProjectionMethod> candidates = cfg.projections;
  if (candidates.empty()) {
    if (ds.embeddings_present) candidates.push_back({ProjectionKind::kExternalEmbedding});
    if (ds.features_present) {
      candidates.push_back({ProjectionKind::kPca});
      candidates.push_back({ProjectionKind::kMds});
    }
  }
  if (candidates.empty()) {
    throw ValidationError("no projection available: dataset has neither embedding nor features");
  }
  if (candidates.size() == 1 || !ds.labels_present || !ds.features_present) {
    ProjectionChoice choice;
    choice.method = candidates.front();
    choice.embedding = project(ds, choice.method, cfg.seed);
    return choice;
  }
  return select_projection(ds, candidates, cfg.seed);
}

PackingLayout state_to_layout(const LayoutState& st, const Dataset& ds, const std::string& method,
                              std::uint64_t seed, const std::string& config) {
  if (st.positions.size() != ds.items.size()) {
    throw ValidationError("state_to_layout: state and dataset sizes differ");
  }
  PackingLayout out;
  out.scale = st.s;
  out.method = method;
  out.seed = seed;
  out.config = config;
  out.circles.resize(st.positions.size());
  for (std::size_t i = 0; i < st.positions.size(); ++i) {
    out.circles[i] = {ds.items[i].id, st.positions[i], st.radius(static_cast<int>(i)),
                      ds.items[i].label};
  }
  return out;
}

PackingLayout pack_ncp(const Dataset& ds, const PipelineConfig& cfg) {
  if (ds.items.empty()) throw ValidationError("pack_ncp: empty dataset");
  ProjectionChoice choice = choose_embedding(ds, cfg);
  std::string config = ncp_config_json(cfg, choice);

  PlanarGraph g = init_planar_graph(choice.embedding);
  LayoutState st = make_stage2_state(g, ds.weights());

  StageConfig s2;
  s2.alpha = cfg.alpha;
  s2.max_iterations = cfg.stage2_max_iterations;
  s2.seed = cfg.seed;

  RefineConfig s3;
  s3.alpha = cfg.alpha;
  s3.beta = cfg.beta;
  s3.iterations = cfg.stage3_iterations;
  s3.seed = cfg.seed;

  std::vector<int> labels = labels_or_zero(ds);
  try {
    LayoutState mid = run_stage2(std::move(st), s2);
    LayoutState fin = run_stage3(std::move(mid), labels, s3);
    return state_to_layout(fin, ds, "ncp", cfg.seed, config);
  } catch (const LayoutNonConvergence& e) {
    throw PackingNonConvergence(e.what(), state_to_layout(e.best, ds, "ncp", cfg.seed, config));
  }
}

PackingLayout pack_fd(const Dataset& ds, const PipelineConfig& cfg) {
  if (ds.items.empty()) throw ValidationError("pack_fd: empty dataset");
  ProjectionChoice choice = choose_embedding(ds, cfg);
  RefineConfig s3;
  s3.alpha = cfg.alpha;
  s3.beta = cfg.beta;
  s3.iterations = cfg.fd_iterations;
  s3.seed = cfg.seed;
  try {
    return fd_baseline(ds, choice.embedding, s3);
  } catch (const LayoutNonConvergence& e) {
    nlohmann::ordered_json j;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["iterations"] = cfg.fd_iterations;
    throw PackingNonConvergence(e.what(),
                                state_to_layout(e.best, ds, "fd", cfg.seed, j.dump()));
  }
}

PackingLayout pack_simifc(const Dataset& ds, const PipelineConfig& cfg) {
  return simifc(ds, cfg.seed);
}

PackingLayout pack(const Dataset& ds, const std::string& method, const PipelineConfig& cfg) {
  if (method == "ncp") return pack_ncp(ds, cfg);
  if (method == "simifc") return pack_simifc(ds, cfg);
  if (method == "fd") return pack_fd(ds, cfg);
  throw ValidationError("unknown method: " + method);
}

}  // namespace ncp
