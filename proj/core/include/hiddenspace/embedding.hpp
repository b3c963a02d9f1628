#pragma once

#include <iosfwd>
#include <vector>

#include "hiddenspace/eigensolver.hpp"
#include "hiddenspace/graph.hpp"
#include "hiddenspace/output.hpp"
#include "hiddenspace/scores.hpp"

namespace hs {

enum class EigenRoute { automatic, dense, iterative };

struct EmbeddingConfig {
  /// Exponent of the degree normalisation K^-alpha A.
  double alpha = 1.0;
  /// Number of hidden coordinates; taken from eigenvectors ranked 2..dim+1.
  std::size_t dim = 3;
  /// Bound on ||N_alpha v - lambda v|| for every retained eigenpair.
  double eig_tol = 1e-8;
  /// Matrix-vector budget for the iterative route; 0 means 10 * n.
  std::size_t max_iter = 0;
  EigenRoute route = EigenRoute::automatic;
  /// `automatic` uses the dense route up to this many nodes.
  std::size_t dense_threshold = 500;
};

/// Hidden-space coordinates of every node of a graph.
///
/// For a connected graph `eigenvalues` holds the dim+1 leading eigenvalues of
/// N_alpha in descending order. When built per component, it holds those of
/// the largest component and `component` tells nodes apart: nodes in
/// different components are infinitely far apart.
struct Embedding {
  Matrix coords;
  Vector eigenvalues;
  /// The discarded leading eigenvector (unit norm, sign canonical).
  Vector leading;
  EmbeddingConfig config;
  std::vector<std::uint32_t> component;
  double max_residual = 0.0;

  std::size_t node_count() const noexcept { return static_cast<std::size_t>(coords.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(coords.cols()); }
};

/// The generalised normal matrix K^-alpha A as a sparse matrix.
SparseMatrix normal_matrix(const Graph& g, double alpha);

/// Embeds a connected graph with every degree >= 1.
Embedding embed(const Graph& g, const EmbeddingConfig& config);

/// Embeds each connected component separately. Components with fewer than
/// dim+1 nodes fill their missing coordinates with zeros.
Embedding embed_components(const Graph& g, const EmbeddingConfig& config);

/// Euclidean distance between hidden coordinates; +infinity across components.
double hs_distance(const Embedding& e, NodeId i, NodeId j);

/// Score -distance for every pair.
ScoreTable hs_scores(const Embedding& e, const PairSetPtr& pairs);

/// CSV "node_label,c_1..c_d" preceded by '#' metadata lines.
void write_coordinates_csv(std::ostream& out, const Embedding& e, const NodeIdMap& labels,
                           const Metadata& meta);
/// JSON object with metadata, config and the eigenvalue array.
void write_eigenvalues_json(std::ostream& out, const Embedding& e, const Metadata& meta);

}  // namespace hs
