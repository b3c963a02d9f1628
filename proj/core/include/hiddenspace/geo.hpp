#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hiddenspace/embedding.hpp"
#include "hiddenspace/graph.hpp"
#include "hiddenspace/output.hpp"

namespace hs {

enum class Metric { euclidean, haversine };

/// Ground-truth node positions, one row per node in graph id order.
struct CoordinateSet {
  Matrix positions;
  Metric metric = Metric::euclidean;

  std::size_t size() const noexcept { return static_cast<std::size_t>(positions.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(positions.cols()); }
  /// Euclidean distance, or great-circle km for (lat, lon) degrees under haversine.
  double distance(std::size_t i, std::size_t j) const;
};

/// Rows of a coordinate CSV keyed by label, before alignment with a graph.
struct LabeledCoordinates {
  std::vector<std::string> labels;
  Matrix positions;

  /// Rows in the order of `nodes`; throws InvalidArgument naming the first missing label.
  CoordinateSet align(const NodeIdMap& nodes, Metric metric = Metric::euclidean) const;
};

/// CSV "node_label,x,y[,z...]"; '#' lines skipped, an optional header row is detected.
LabeledCoordinates parse_coordinates(std::istream& in);
LabeledCoordinates read_coordinates(const std::string& path);

void write_coordinates(std::ostream& out, const CoordinateSet& coords, const NodeIdMap& labels,
                       const Metadata& meta);

/// Average ranks (1-based), ties share the mean rank.
std::vector<double> average_ranks(std::span<const double> values);
/// Pearson correlation of average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

/// Spearman correlation between hidden and real pairwise distances, over every
/// pair when n(n-1)/2 <= pair_budget and over pair_budget random pairs otherwise.
double spearman_hidden_vs_real(const Embedding& e, const CoordinateSet& coords,
                               std::size_t pair_budget = 2'000'000, std::uint64_t seed = 1);

struct GridScan {
  std::vector<double> alphas;
  std::vector<std::size_t> dims;
  /// values[a][d]; NaN where the embedding failed.
  std::vector<std::vector<double>> values;
  std::vector<std::vector<std::optional<std::string>>> errors;
  double best_alpha = NAN;
  std::size_t best_dim = 0;
  double best_value = NAN;
};

GridScan scan_grid(const Graph& g, const CoordinateSet& coords, const std::vector<double>& alpha_grid,
                   const std::vector<std::size_t>& dim_grid, const EmbeddingConfig& base = {},
                   std::size_t pair_budget = 2'000'000, std::uint64_t seed = 1);

/// Matrix CSV: header "alpha,d=1,...", one row per alpha.
void write_grid_csv(std::ostream& out, const GridScan& scan, const Metadata& meta);

}  // namespace hs
