#pragma once

#include <cstdint>
#include <vector>

#include "hiddenspace/geo.hpp"
#include "hiddenspace/graph.hpp"
#include "hiddenspace/rng.hpp"

namespace hs {

/// Geometric scale-free model: uniform positions in [0,1]^dim, Pareto expected
/// degrees, and pairs linked with probability 1 / (1 + d / (mu k_i k_j))^beta,
/// mu = (beta - 1) / (2 <k>).
struct ModelParams {
  std::size_t nodes = 700;
  double gamma = 2.5;
  double k0 = 1.0;
  double beta = 2.0;
  double mean_degree = 4.0;
  std::size_t dim = 2;
  std::uint64_t seed = 1;

  double mu() const { return (beta - 1.0) / (2.0 * mean_degree); }
  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

/// Connection kernel r(d, k_i, k_j).
double connection_probability(double distance, double ki, double kj, double beta, double mu);

/// Inverse Pareto CDF: k0 (1 - u)^(-1 / (gamma - 1)).
double pareto_quantile(double u, double gamma, double k0);

std::vector<double> sample_degrees(const ModelParams& params, Rng& rng);

struct ModelInstance {
  /// Graph without isolated nodes.
  Graph graph;
  /// Node labels are the generation indices 0..N-1 of surviving nodes.
  NodeIdMap labels;
  CoordinateSet coords;
  std::vector<double> expected_degrees;
  /// Edge count before pruning; mean degree is 2 * edges / N.
  std::size_t raw_edges = 0;
};

/// Deterministic in params.seed; each pair draws from its own counter-based stream.
ModelInstance generate(const ModelParams& params);

}  // namespace hs
