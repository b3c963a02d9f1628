#pragma once

#include <cstdint>

#include "hiddenspace/eigensolver.hpp"
#include "hiddenspace/graph.hpp"
#include "hiddenspace/scores.hpp"

namespace hs {

/// |Γ(i) ∩ Γ(j)|
ScoreTable cn_scores(const Graph& g, const PairSetPtr& pairs);
/// |Γ(i) ∩ Γ(j)| / |Γ(i) ∪ Γ(j)|, 0 when the union is empty.
ScoreTable jaccard_scores(const Graph& g, const PairSetPtr& pairs);
/// Σ 1/k_z over common neighbours z.
ScoreTable ra_scores(const Graph& g, const PairSetPtr& pairs);
/// Σ 1/ln k_z over common neighbours z; neighbours with k_z = 1 contribute 0.
ScoreTable aa_scores(const Graph& g, const PairSetPtr& pairs);

/// Largest adjacency eigenvalue.
double spectral_radius(const Graph& g);

struct KatzConfig {
  /// Path attenuation; ignored when auto_scale is set.
  double attenuation = 0.0;
  /// Use 0.5 / lambda_max(A).
  bool auto_scale = true;
};

/// Attenuation actually used; throws InvalidArgument("series diverges") when
/// it is not strictly below 1 / lambda_max.
double katz_attenuation(const Graph& g, const KatzConfig& config);

/// [(I - aA)^-1 - I]_ij by linear solves (dense LDLT up to 2000 nodes, sparse beyond).
ScoreTable katz_scores(const Graph& g, const KatzConfig& config, const PairSetPtr& pairs);

struct SpmConfig {
  double perturb_fraction = 0.1;
  std::size_t repetitions = 10;
  std::uint64_t seed = 1;
  /// Graphs larger than this use only the leading `top_k` eigenpairs.
  std::size_t dense_limit = 3000;
  std::size_t top_k = 256;
};

/// Structural perturbation scores averaged over repetitions.
ScoreTable spm_scores(const Graph& g, const SpmConfig& config, const PairSetPtr& pairs);

/// One SPM reconstruction: eigendecompose remaining = A - removed and return
/// Σ_k (λ_k + x_k' ΔA x_k) x_k x_k' (dense, n x n).
Eigen::MatrixXd spm_reconstruction(const Graph& remaining, std::span<const NodePair> removed);

enum class HybridMode { product, distance_quotient };

/// Combines an index with hidden-space scores (-distance): product gives
/// s * (-d); distance_quotient gives s / (d + 1e-12). Zero index scores stay 0.
ScoreTable hybrid_scores(const ScoreTable& index, const ScoreTable& hs, HybridMode mode);

}  // namespace hs
