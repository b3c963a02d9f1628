#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hiddenspace/newtonian.hpp"

namespace hs {

enum class DistanceDensity {
  /// Integrand p1(l) p1(sqrt(r^2 - l^2)) exactly as printed; not a normalised density.
  as_written,
  /// Includes the polar Jacobian r / sqrt(r^2 - l^2): the square line-picking density.
  corrected,
};

enum class DegreeWeighting {
  /// Endpoint degrees weighted by k p0(k) / <k>, as printed for both edge states.
  edge_biased,
  /// Endpoint degrees drawn from p0(k); matches sampling pairs from the generator.
  plain,
};

struct TheoryParams {
  double gamma = 2.5;
  double k0 = 1.0;
  double beta = 2.0;
  double mean_degree = 4.0;
  DistanceDensity density = DistanceDensity::corrected;
  DegreeWeighting weighting = DegreeWeighting::edge_biased;
  /// Composite Gauss-Legendre panels over [0, sqrt 2] and nodes per panel.
  std::size_t panels = 512;
  std::size_t order = 8;
  /// Degree integrals run up to kmax with Pareto tail mass beyond kmax equal to this.
  double tail_mass = 1e-6;
  /// Log-spaced Simpson nodes per degree axis (made odd).
  std::size_t degree_nodes = 1025;

  static TheoryParams from_model(const ModelParams& m);
  double kmax() const;
  void validate() const;
};

/// 2 (1 - l) on [0, 1].
double p1(double l);
/// Density of the distance between two uniform points of the unit square.
double p2(double r, DistanceDensity mode = DistanceDensity::corrected);

/// Conditional distance densities and the resulting AUC for a distance-ranked predictor.
class TheoryModel {
 public:
  explicit TheoryModel(const TheoryParams& params);

  /// p3(r | e): normalised density of the endpoint distance given edge state e.
  double p3(double r, bool edge_present) const;
  /// Degree-averaged connection probability at distance r.
  double connection_probability(double r) const;
  /// Unconditional probability that a random pair is linked.
  double link_probability() const { return link_probability_; }
  /// P(r_edge < r_non_edge): the AUC of scoring pairs by -distance.
  double auc() const { return auc_; }
  double edge_normaliser() const { return z_edge_; }
  double non_edge_normaliser() const { return z_non_edge_; }
  const TheoryParams& params() const noexcept { return params_; }

 private:
  double joint(double r, bool edge_present) const;

  TheoryParams params_;
  std::vector<double> products_;  // k_i k_j on the product grid
  std::vector<double> weights_;   // convolved degree weights
  double total_weight_ = 0.0;
  double z_edge_ = 1.0;
  double z_non_edge_ = 1.0;
  double link_probability_ = 0.0;
  double auc_ = 0.0;
};

double theoretical_auc(const TheoryParams& params);

/// P(R1 < R2) for independent R1 ~ first, R2 ~ second on [0, sqrt 2] (both
/// normalised internally) by nested composite Gauss-Legendre quadrature; the
/// panels are aligned with the kink at r = 1.
double distance_auc(const std::function<double(double)>& first,
                    const std::function<double(double)>& second, std::size_t panels = 512,
                    std::size_t order = 8);

}  // namespace hs
