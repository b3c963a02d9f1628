#pragma once

// Reference computations used only by tests. Each one takes a route that is
// independent of the library code it checks.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "hiddenspace/graph.hpp"
#include "hiddenspace/newtonian.hpp"

namespace hs::oracle {

/// Dense K^-alpha A.
Eigen::MatrixXd dense_normal_matrix(const Graph& g, double alpha);

/// Eigenvalues of the non-symmetric N_alpha from a general (Hessenberg QR)
/// eigensolver, sorted descending.
std::vector<double> general_eigenvalues(const Eigen::MatrixXd& m);

/// Σ_{l=1}^{terms} a^l A^l by repeated multiplication.
Eigen::MatrixXd katz_series(const Graph& g, double attenuation, int terms);

/// Σ_k (λ_k + Δλ_k) x_k x_k' straight from the formula, with A^R built densely.
Eigen::MatrixXd spm_direct(const Graph& full, const std::vector<NodePair>& removed);

/// Square line-picking density in closed form.
double square_distance_density(double r);

/// Erdős–Rényi G(n, p).
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

struct GenerativeAuc {
  double auc;
  std::size_t edges_seen;
  std::size_t non_edges_seen;
};

/// Draws unit-square point pairs and Pareto degrees, links them with the model
/// kernel and compares `comparisons` random (edge, non-edge) distance pairs.
/// With `edge_biased` both endpoint degrees are drawn from k p0(k) instead.
GenerativeAuc generative_auc(const ModelParams& params, std::size_t comparisons, std::uint64_t seed,
                             bool edge_biased = false);

/// Brute-force AUC over every (probe, non-edge) score pair.
double brute_force_auc(const std::vector<double>& probe, const std::vector<double>& non_edge);

}  // namespace hs::oracle
