#include "hiddenspace/embedding.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hiddenspace/error.hpp"
#include "json.hpp"

namespace hs {

namespace {

// Relative gap below which two eigenvalues are treated as one degenerate cluster.
constexpr double kTieTolerance = 1e-9;

std::vector<double> degree_scaling(const Graph& g, double exponent) {
  std::vector<double> s(g.node_count());
  for (NodeId u = 0; u < s.size(); ++u) s[u] = std::pow(static_cast<double>(g.degree(u)), exponent);
  return s;
}

// Symmetric surrogate K^-a/2 A K^-a/2, similar to N_alpha.
SparseMatrix symmetric_surrogate(const Graph& g, std::span<const double> s) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.edge_count());
  for (const auto& e : g.edges()) {
    const double w = s[e.u] * s[e.v];
    triplets.emplace_back(e.u, e.v, w);
    triplets.emplace_back(e.v, e.u, w);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

// Replaces each degenerate cluster's basis by the Gram-Schmidt image of the
// projected unit vectors e_0, e_1, ..., which depends only on the subspace.
void canonicalize_clusters(Vector& values, Matrix& vectors) {
  const auto k = values.size();
  Eigen::Index start = 0;
  while (start < k) {
    Eigen::Index stop = start + 1;
    while (stop < k && std::abs(values[stop - 1] - values[stop]) <=
                           kTieTolerance * std::max(1.0, std::abs(values[start])))
      ++stop;
    const Eigen::Index size = stop - start;
    if (size > 1) {
      const Matrix block = vectors.middleCols(start, size);
      Matrix chosen(vectors.rows(), size);
      Eigen::Index found = 0;
      for (Eigen::Index i = 0; i < vectors.rows() && found < size; ++i) {
        Vector p = block * block.row(i).transpose();
        for (int pass = 0; pass < 2; ++pass)
          p -= chosen.leftCols(found) * (chosen.leftCols(found).transpose() * p);
        const double norm = p.norm();
        if (norm > 1e-6) chosen.col(found++) = p / norm;
      }
      vectors.middleCols(start, size) = chosen;
      const double mean = values.segment(start, size).mean();
      values.segment(start, size).setConstant(mean);
    }
    start = stop;
  }
}

void canonicalize_sign(Eigen::Ref<Vector> v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best]) + 1e-12) best = i;
  if (v[best] < 0) v = -v;
}

struct ComponentResult {
  Matrix coords;  // n x dim, zero-padded
  Vector values;
  Vector leading;
  double residual = 0.0;
};

ComponentResult embed_connected(const Graph& g, const EmbeddingConfig& cfg, bool pad) {
  const auto n = g.node_count();
  for (NodeId u = 0; u < n; ++u)
    if (g.degree(u) == 0) throw InvalidArgument("embed: graph has an isolated node");
  if (!pad && cfg.dim + 1 > n)
    throw InvalidArgument("embed: dimension " + std::to_string(cfg.dim) +
                          " needs at least dim+1 nodes, graph has " + std::to_string(n));

  const std::size_t wanted = std::min(cfg.dim + 1, n);
  const auto half = degree_scaling(g, -0.5 * cfg.alpha);
  const SparseMatrix m = symmetric_surrogate(g, half);

  const bool dense = cfg.route == EigenRoute::dense ||
                     (cfg.route == EigenRoute::automatic && n <= cfg.dense_threshold) ||
                     n <= wanted + 2;
  SymmetricEigenpairs pairs;
  if (dense) {
    pairs = dense_symmetric_eigen(Matrix(m));
    // Keep the wanted pairs plus any cluster straddling the cut.
    auto keep = static_cast<Eigen::Index>(wanted);
    while (keep < pairs.values.size() &&
           std::abs(pairs.values[keep] - pairs.values[keep - 1]) <=
               kTieTolerance * std::max(1.0, std::abs(pairs.values[keep - 1])))
      ++keep;
    pairs.values.conservativeResize(keep);
    pairs.vectors.conservativeResize(Eigen::NoChange, keep);
  } else {
    // The M-residual bound that guarantees the N_alpha residual after back-transformation.
    const auto [lo, hi] = std::minmax_element(half.begin(), half.end());
    LanczosOptions opt;
    // A few guard vectors let a degenerate cluster at the boundary be seen whole.
    opt.count = std::min(n, wanted + 2);
    opt.tolerance = std::max(cfg.eig_tol * (*lo / *hi), 1e-13);
    opt.max_matvecs = cfg.max_iter ? cfg.max_iter : 10 * n;
    opt.seed = 0x48534D42 ^ n;
    pairs = lanczos_largest(m, opt);
  }

  Vector values = pairs.values;
  Matrix u = pairs.vectors;
  canonicalize_clusters(values, u);

  const auto n_idx = static_cast<Eigen::Index>(n);
  const auto w = static_cast<Eigen::Index>(wanted);
  Matrix v(n_idx, w);
  const Eigen::Map<const Vector> scale(half.data(), n_idx);
  for (Eigen::Index j = 0; j < w; ++j) {
    v.col(j) = scale.cwiseProduct(u.col(j));
    v.col(j).normalize();
    canonicalize_sign(v.col(j));
  }

  // Residual on N_alpha = K^-alpha A itself.
  const SparseMatrix na = normal_matrix(g, cfg.alpha);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < w; ++j)
    worst = std::max(worst, (na * v.col(j) - values[j] * v.col(j)).norm());
  if (worst > cfg.eig_tol)
    throw ConvergenceError("embed: eigenpair residual above eig_tol", worst);

  ComponentResult out;
  out.coords = Matrix::Zero(n_idx, static_cast<Eigen::Index>(cfg.dim));
  if (w > 1) out.coords.leftCols(w - 1) = v.rightCols(w - 1);
  out.values = values.head(w);
  out.leading = v.col(0);
  out.residual = worst;
  return out;
}

void check_config(const EmbeddingConfig& cfg) {
  if (cfg.dim < 1) throw InvalidArgument("embed: dim must be >= 1");
  if (!(cfg.eig_tol > 0)) throw InvalidArgument("embed: eig_tol must be positive");
  if (!std::isfinite(cfg.alpha)) throw InvalidArgument("embed: alpha must be finite");
}

}  // namespace

SparseMatrix normal_matrix(const Graph& g, double alpha) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  const auto s = degree_scaling(g, -alpha);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.edge_count());
  for (const auto& e : g.edges()) {
    triplets.emplace_back(e.u, e.v, s[e.u]);
    triplets.emplace_back(e.v, e.u, s[e.v]);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Embedding embed(const Graph& g, const EmbeddingConfig& config) {
  check_config(config);
  if (g.node_count() == 0) throw InvalidArgument("embed: empty graph");
  std::size_t count = 0;
  connected_components(g, &count);
  if (count != 1) throw InvalidArgument("embed: graph is not connected; take the giant component first");
  auto r = embed_connected(g, config, false);
  Embedding e;
  e.coords = std::move(r.coords);
  e.eigenvalues = std::move(r.values);
  e.leading = std::move(r.leading);
  e.config = config;
  e.component.assign(g.node_count(), 0);
  e.max_residual = r.residual;
  return e;
}

Embedding embed_components(const Graph& g, const EmbeddingConfig& config) {
  check_config(config);
  std::size_t count = 0;
  auto comp = connected_components(g, &count);
  if (count == 1) return embed(g, config);

  std::vector<std::vector<NodeId>> members(count);
  for (NodeId u = 0; u < comp.size(); ++u) members[comp[u]].push_back(u);

  Embedding e;
  e.config = config;
  e.coords = Matrix::Zero(static_cast<Eigen::Index>(g.node_count()), static_cast<Eigen::Index>(config.dim));
  e.component = std::move(comp);
  std::size_t largest = 0;
  for (std::size_t c = 0; c < count; ++c) {
    if (members[c].size() < 2) {
      throw InvalidArgument("embed_components: graph has an isolated node");
    }
    const auto sub = induced_subgraph(g, members[c]);
    auto r = embed_connected(sub.graph, config, true);
    for (std::size_t i = 0; i < sub.parent_ids.size(); ++i)
      e.coords.row(sub.parent_ids[i]) = r.coords.row(static_cast<Eigen::Index>(i));
    e.max_residual = std::max(e.max_residual, r.residual);
    if (c == 0 || members[c].size() > members[largest].size()) {
      largest = c;
      e.eigenvalues = r.values;
      e.leading = Vector::Zero(static_cast<Eigen::Index>(g.node_count()));
      for (std::size_t i = 0; i < sub.parent_ids.size(); ++i)
        e.leading[sub.parent_ids[i]] = r.leading[static_cast<Eigen::Index>(i)];
    }
  }
  return e;
}

double hs_distance(const Embedding& e, NodeId i, NodeId j) {
  const auto n = e.node_count();
  if (i >= n || j >= n) throw InvalidArgument("hs_distance: node id out of range");
  if (i == j) return 0.0;
  if (e.component[i] != e.component[j]) return std::numeric_limits<double>::infinity();
  return (e.coords.row(i) - e.coords.row(j)).norm();
}

ScoreTable hs_scores(const Embedding& e, const PairSetPtr& pairs) {
  ScoreTable t{"HS", pairs, std::vector<double>(pairs->size())};
  for (std::size_t k = 0; k < pairs->size(); ++k) {
    const auto& p = (*pairs)[k];
    t.scores[k] = -hs_distance(e, p.u, p.v);
  }
  return t;
}

void write_coordinates_csv(std::ostream& out, const Embedding& e, const NodeIdMap& labels,
                           const Metadata& meta) {
  meta.write_comment_header(out);
  out << "node_label";
  for (std::size_t c = 1; c <= e.dim(); ++c) out << ",c_" << c;
  out << '\n';
  for (Eigen::Index i = 0; i < e.coords.rows(); ++i) {
    out << labels.label(static_cast<NodeId>(i));
    for (Eigen::Index c = 0; c < e.coords.cols(); ++c) out << ',' << format_double(e.coords(i, c));
    out << '\n';
  }
}

void write_eigenvalues_json(std::ostream& out, const Embedding& e, const Metadata& meta) {
  nlohmann::ordered_json j;
  auto& m = j["metadata"];
  m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta.entries()) m[k] = v;
  j["alpha"] = e.config.alpha;
  j["dim"] = e.config.dim;
  j["eig_tol"] = e.config.eig_tol;
  j["max_residual"] = e.max_residual;
  j["eigenvalues"] = std::vector<double>(e.eigenvalues.data(), e.eigenvalues.data() + e.eigenvalues.size());
  out << j.dump(2) << '\n';
}

}  // namespace hs
