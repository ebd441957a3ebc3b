#include "ncp/init.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "ncp/errors.hpp"
#include "ncp/geom/triangulation.hpp"

namespace ncp {

using geom::Point2;

namespace {

// Columns of v get a canonical sign: the entry of largest magnitude is made
// positive so eigenvector sign flips cannot leak into layouts.
void canonicalize_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index arg = 0;
    v.col(c).cwiseAbs().maxCoeff(&arg);
    if (v(arg, c) < 0.0) v.col(c) = -v.col(c);
  }
}

std::vector<Point2> pca_project(const Dataset& ds) {
  int n = static_cast<int>(ds.size());
  int d = ds.feature_dim;
  Eigen::MatrixXd x(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = ds.items[i].features[j];
  }
  x.rowwise() -= x.colwise().mean();
  Eigen::MatrixXd cov = x.transpose() * x / std::max(1, n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  // Eigenvalues come ascending; take the top two columns.
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(d, 2);
  basis.col(0) = eig.eigenvectors().col(d - 1);
  if (d >= 2) basis.col(1) = eig.eigenvectors().col(d - 2);
  canonicalize_signs(basis);
  Eigen::MatrixXd y = x * basis;
  std::vector<Point2> out(n);
  for (int i = 0; i < n; ++i) out[i] = {y(i, 0), y(i, 1)};
  return out;
}

std::vector<Point2> mds_project(const Dataset& ds) {
  int n = static_cast<int>(ds.size());
  Eigen::MatrixXd d2(n, n);
  for (int i = 0; i < n; ++i) {
    d2(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (int t = 0; t < ds.feature_dim; ++t) {
        double diff = ds.items[i].features[t] - ds.items[j].features[t];
        s += diff * diff;
      }
      d2(i, j) = d2(j, i) = s;
    }
  }
  // Double centering: B = -1/2 J D2 J.
  Eigen::VectorXd row_mean = d2.rowwise().mean();
  double grand = row_mean.mean();
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      b(i, j) = -0.5 * (d2(i, j) - row_mean(i) - row_mean(j) + grand);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, 2);
  v.col(0) = eig.eigenvectors().col(n - 1);
  if (n >= 2) v.col(1) = eig.eigenvectors().col(n - 2);
  canonicalize_signs(v);
  double l0 = std::sqrt(std::max(0.0, eig.eigenvalues()(n - 1)));
  double l1 = n >= 2 ? std::sqrt(std::max(0.0, eig.eigenvalues()(n - 2))) : 0.0;
  std::vector<Point2> out(n);
  for (int i = 0; i < n; ++i) out[i] = {v(i, 0) * l0, v(i, 1) * l1};
  return out;
}

}  // namespace

const char* projection_name(ProjectionKind kind) {
  switch (kind) {
    case ProjectionKind::kExternalEmbedding: return "external";
    case ProjectionKind::kPca: return "pca";
    case ProjectionKind::kMds: return "mds";
  }
  return "unknown";
}

std::vector<Point2> project(const Dataset& ds, const ProjectionMethod& method,
                            std::uint64_t /*seed*/) {
  if (method.kind == ProjectionKind::kExternalEmbedding) {
    if (!ds.embeddings_present) {
      throw MissingEmbedding("project: external-embedding requires embeddings for every item");
    }
    return ds.embeddings();
  }
  if (!ds.features_present) {
    throw MissingFeatures(std::string("project: ") + projection_name(method.kind) +
                          " requires features");
  }
  return method.kind == ProjectionKind::kPca ? pca_project(ds) : mds_project(ds);
}

PlanarGraph init_planar_graph(const std::vector<Point2>& embedding) {
  std::size_t n = embedding.size();
  if (n == 0) throw DegenerateInput("init_planar_graph: empty embedding");
  if (n == 1) return PlanarGraph::from_edges(embedding, {});
  if (n == 2) return PlanarGraph::from_edges(embedding, {{0, 1}});

  // Jitter exact duplicates deterministically; direction keyed by index.
  std::vector<Point2> pts = embedding;
  Point2 lo = pts[0], hi = pts[0];
  for (const Point2& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  double diag = dist(lo, hi);
  double eps = 1e-9 * (diag > 0.0 ? diag : 1.0);
  std::map<std::pair<double, double>, int> seen;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = seen.try_emplace({pts[i].x, pts[i].y}, 0);
    if (!fresh) {
      int rank = ++it->second;
      double ang = 2.39996322972865332 * static_cast<double>(i + 1);  // golden angle
      pts[i] += Point2{std::cos(ang), std::sin(ang)} * (eps * rank);
    }
  }
  return PlanarGraph::from_triangulation(geom::delaunay(pts));
}

double np_degree_k(const PlanarGraph& g, const Dataset& ds, int hop, int* empty_gamma_count) {
  int n = g.node_count();
  if (static_cast<int>(ds.size()) != n) {
    throw ValidationError("np_degree: graph and dataset sizes differ");
  }
  if (!ds.features_present) throw MissingFeatures("np_degree: dataset has no features");
  if (!ds.labels_present) throw MissingLabels("np_degree: dataset has no labels");
  std::vector<int> labels = ds.labels();
  double total = 0.0;
  int empties = 0;
  for (int i = 0; i < n; ++i) {
    NeighborSet gamma_g = same_label_khop(g, i, hop, labels);
    int k = static_cast<int>(gamma_g.members.size());
    if (k == 0) {
      ++empties;
      continue;
    }
    NeighborSet gamma_d = feature_knn(ds, i, k);
    std::vector<int> inter;
    std::set_intersection(gamma_g.members.begin(), gamma_g.members.end(),
                          gamma_d.members.begin(), gamma_d.members.end(),
                          std::back_inserter(inter));
    std::size_t uni = gamma_g.members.size() + gamma_d.members.size() - inter.size();
    total += static_cast<double>(inter.size()) / static_cast<double>(uni);
  }
  if (empty_gamma_count != nullptr) *empty_gamma_count = empties;
  return n > 0 ? total / n : 0.0;
}

double np_degree(const PlanarGraph& g, const Dataset& ds) { return np_degree_k(g, ds, 1); }

ProjectionChoice select_projection(const Dataset& ds,
                                   const std::vector<ProjectionMethod>& candidates,
                                   std::uint64_t seed) {
  if (candidates.empty()) throw ValidationError("select_projection: no candidates");
  ProjectionChoice best;
  bool have = false;
  for (const ProjectionMethod& m : candidates) {
    std::vector<Point2> emb = project(ds, m, seed);
    PlanarGraph g = init_planar_graph(emb);
    double np = np_degree(g, ds);
    if (!have || np > best.np) {
      have = true;
      best = {m, std::move(emb), np};
    }
  }
  return best;
}

}  // namespace ncp
