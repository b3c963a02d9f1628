#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hiddenspace/evaluation.hpp"

namespace hs {

struct SelectedParams {
  double alpha = 1.0;
  std::size_t dim = 3;
  double auc = 0.0;
  /// AUC along the alpha sweep (at the anchor dimension) and the dim sweep (at alpha*).
  std::vector<double> alpha_profile;
  std::vector<double> dim_profile;
  std::size_t anchor_dim = 3;
};

using AucOracle = std::function<double(double alpha, std::size_t dim)>;

/// Two-stage coordinate search: sweep alpha at the grid dimension closest to
/// 3, then sweep the dimension at the best alpha. Ties go to the smaller alpha,
/// then the smaller dimension.
SelectedParams select_params(const AucOracle& auc_at, std::vector<double> alpha_grid,
                             std::vector<std::size_t> dim_grid);

struct TuningConfig {
  double validation_fraction = 0.1;
  std::uint64_t seed = 1;
  AucMode auc_mode = AucMode::exact;
  EmbeddingConfig embedding;
};

/// Splits the training graph of `split` once more and scores HS on the
/// validation edges for every grid point.
SelectedParams select_params(const Split& split, const std::vector<double>& alpha_grid,
                             const std::vector<std::size_t>& dim_grid, const TuningConfig& config);

/// 0, 0.05, ..., 2
std::vector<double> default_alpha_grid();
/// 1..40
std::vector<std::size_t> default_dim_grid();

}  // namespace hs
