#include "hiddenspace/newtonian.hpp"

#include <cmath>

#include "hiddenspace/error.hpp"
#include "hiddenspace/parallel.hpp"

namespace hs {

void ModelParams::validate() const {
  if (nodes < 2) throw InvalidArgument("model: need at least 2 nodes");
  if (!(gamma > 2)) throw InvalidArgument("model: gamma must exceed 2");
  if (!(beta > 1)) throw InvalidArgument("model: beta must exceed 1");
  if (!(k0 > 0)) throw InvalidArgument("model: k0 must be positive");
  if (!(mean_degree > 0) || !(mu() > 0)) throw InvalidArgument("model: mu must be positive");
  if (dim < 1 || dim > 3) throw InvalidArgument("model: dim must be 1, 2 or 3");
}

double connection_probability(double distance, double ki, double kj, double beta, double mu) {
  return std::pow(1.0 + distance / (mu * ki * kj), -beta);
}

double pareto_quantile(double u, double gamma, double k0) {
  return k0 * std::pow(1.0 - u, -1.0 / (gamma - 1.0));
}

std::vector<double> sample_degrees(const ModelParams& params, Rng& rng) {
  std::vector<double> k(params.nodes);
  for (auto& x : k) x = pareto_quantile(rng.uniform(), params.gamma, params.k0);
  return k;
}

ModelInstance generate(const ModelParams& params) {
  params.validate();
  const auto n = params.nodes;
  const auto dim = static_cast<Eigen::Index>(params.dim);
  Rng rng(derive_seed(params.seed, "positions"));
  Matrix pos(static_cast<Eigen::Index>(n), dim);
  for (Eigen::Index i = 0; i < pos.rows(); ++i)
    for (Eigen::Index c = 0; c < dim; ++c) pos(i, c) = rng.uniform();
  Rng degree_rng(derive_seed(params.seed, "degrees"));
  const auto kappa = sample_degrees(params, degree_rng);

  const double mu = params.mu();
  const std::uint64_t edge_seed = derive_seed(params.seed, "edges");
  std::vector<std::vector<NodePair>> rows(n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = (pos.row(static_cast<Eigen::Index>(i)) - pos.row(static_cast<Eigen::Index>(j))).norm();
      const double p = connection_probability(d, kappa[i], kappa[j], params.beta, mu);
      const double u = bits_to_unit(mix64(edge_seed ^ mix64(static_cast<std::uint64_t>(i) * n + j)));
      if (u < p) rows[i].push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
    }
  });
  std::vector<NodePair> edges;
  for (auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());

  const Graph full = Graph::from_edges(n, edges);
  std::vector<NodeId> keep;
  for (NodeId u = 0; u < n; ++u)
    if (full.degree(u) > 0) keep.push_back(u);

  ModelInstance out;
  out.raw_edges = full.edge_count();
  auto sub = induced_subgraph(full, keep);
  out.graph = std::move(sub.graph);
  out.labels = NodeIdMap::identity(n).restrict(sub.parent_ids);
  out.coords.positions.resize(static_cast<Eigen::Index>(keep.size()), dim);
  out.expected_degrees.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.coords.positions.row(static_cast<Eigen::Index>(i)) = pos.row(keep[i]);
    out.expected_degrees.push_back(kappa[keep[i]]);
  }
  return out;
}

}  // namespace hs
