#include "hiddenspace/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hiddenspace/error.hpp"
#include "hiddenspace/quadrature.hpp"

namespace hs {

namespace {

const double kSqrt2 = std::numbers::sqrt2;

struct Panel {
  double lo, hi;
};

std::vector<Panel> distance_panels(std::size_t panels) {
  if (panels < 2) throw InvalidArgument("theory: need at least two panels");
  // Split proportionally so every panel has about the same width, with r = 1 a boundary.
  auto below = static_cast<std::size_t>(std::llround(static_cast<double>(panels) / kSqrt2));
  below = std::clamp<std::size_t>(below, 1, panels - 1);
  const std::size_t above = panels - below;
  std::vector<Panel> out;
  for (std::size_t p = 0; p < below; ++p)
    out.push_back({static_cast<double>(p) / below, static_cast<double>(p + 1) / below});
  const double h = (kSqrt2 - 1.0) / static_cast<double>(above);
  for (std::size_t p = 0; p < above; ++p)
    out.push_back({1.0 + h * static_cast<double>(p), p + 1 == above ? kSqrt2 : 1.0 + h * static_cast<double>(p + 1)});
  return out;
}

template <class F>
double panel_sum(const F& f, double lo, double hi, const GaussLegendre& rule) {
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.order(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * s;
}

}  // namespace

double p1(double l) {
  if (!(l >= 0.0 && l <= 1.0)) throw InvalidArgument("p1: l must lie in [0, 1]");
  return 2.0 * (1.0 - l);
}

double p2(double r, DistanceDensity mode) {
  if (!(r >= 0.0 && r <= kSqrt2 + 1e-12)) throw InvalidArgument("p2: r must lie in [0, sqrt 2]");
  r = std::min(r, kSqrt2);
  if (r == 0.0) return 0.0;
  // l = r sin(theta) removes the endpoint singularity of the corrected form.
  const double lo = r > 1.0 ? std::sqrt(r * r - 1.0) : 0.0;
  const double hi = std::min(r, 1.0);
  if (hi <= lo) return 0.0;
  const double t0 = std::asin(std::min(1.0, lo / r));
  const double t1 = std::asin(std::min(1.0, hi / r));
  static const GaussLegendre rule(24);
  auto clamp01 = [](double x) { return std::clamp(x, 0.0, 1.0); };
  return panel_sum(
      [&](double t) {
        const double a = clamp01(r * std::sin(t)), b = clamp01(r * std::cos(t));
        const double jac = mode == DistanceDensity::corrected ? r : r * std::cos(t);
        return 2.0 * (1.0 - a) * 2.0 * (1.0 - b) * jac;
      },
      t0, t1, rule);
}

// ---------------------------------------------------------------------------

TheoryParams TheoryParams::from_model(const ModelParams& m) {
  TheoryParams t;
  t.gamma = m.gamma;
  t.k0 = m.k0;
  t.beta = m.beta;
  t.mean_degree = m.mean_degree;
  return t;
}

double TheoryParams::kmax() const { return k0 * std::pow(tail_mass, 1.0 / (1.0 - gamma)); }

void TheoryParams::validate() const {
  if (!(gamma > 2)) throw InvalidArgument("theory: gamma must exceed 2");
  if (!(beta > 1)) throw InvalidArgument("theory: beta must exceed 1");
  if (!(k0 > 0)) throw InvalidArgument("theory: k0 must be positive");
  if (!(mean_degree > 0)) throw InvalidArgument("theory: mean degree must be positive");
  if (!(tail_mass > 0 && tail_mass < 1)) throw InvalidArgument("theory: tail mass must lie in (0,1)");
  if (order == 0 || degree_nodes < 3) throw InvalidArgument("theory: quadrature resolution too small");
}

TheoryModel::TheoryModel(const TheoryParams& params) : params_(params) {
  params_.validate();
  std::size_t q = params_.degree_nodes | 1;
  const double span = std::log(params_.kmax() / params_.k0);
  const double h = span / static_cast<double>(q - 1);

  // Simpson weights in t = ln(k / k0); density in t is p0(k) k (times k / <k> when edge biased).
  std::vector<double> w(q);
  for (std::size_t a = 0; a < q; ++a) {
    const double t = h * static_cast<double>(a);
    const double k = params_.k0 * std::exp(t);
    double density = (params_.gamma - 1.0) * std::exp((1.0 - params_.gamma) * t);
    if (params_.weighting == DegreeWeighting::edge_biased) density *= k / params_.mean_degree;
    const double simpson = (a == 0 || a == q - 1) ? 1.0 : (a % 2 ? 4.0 : 2.0);
    w[a] = density * simpson * h / 3.0;
  }
  // The kernel depends on k_i k_j only, so the double sum collapses to a convolution.
  products_.resize(2 * q - 1);
  weights_.assign(2 * q - 1, 0.0);
  for (std::size_t c = 0; c < products_.size(); ++c)
    products_[c] = params_.k0 * params_.k0 * std::exp(h * static_cast<double>(c));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) weights_[a + b] += w[a] * w[b];
  total_weight_ = 0.0;
  for (double x : weights_) total_weight_ += x;

  const GaussLegendre rule(params_.order);
  const auto panels = distance_panels(params_.panels);
  double z1 = 0.0, z0 = 0.0, zp = 0.0;
  for (const auto& p : panels) {
    z1 += panel_sum([&](double r) { return joint(r, true); }, p.lo, p.hi, rule);
    z0 += panel_sum([&](double r) { return joint(r, false); }, p.lo, p.hi, rule);
    zp += panel_sum([&](double r) { return p2(r, params_.density); }, p.lo, p.hi, rule);
  }
  if (!(z1 > 0) || !(z0 > 0) || !std::isfinite(z1) || !std::isfinite(z0))
    throw Error("theory: conditional densities cannot be normalised");
  z_edge_ = z1;
  z_non_edge_ = z0;
  link_probability_ = z1 / (total_weight_ * zp);

  auc_ = distance_auc([&](double r) { return joint(r, true); }, [&](double r) { return joint(r, false); },
                      params_.panels, params_.order);
}

double TheoryModel::connection_probability(double r) const {
  const double mu = (params_.beta - 1.0) / (2.0 * params_.mean_degree);
  double g = 0.0;
  for (std::size_t c = 0; c < products_.size(); ++c)
    g += weights_[c] * std::pow(1.0 + r / (mu * products_[c]), -params_.beta);
  return g / total_weight_;
}

double TheoryModel::joint(double r, bool edge_present) const {
  const double density = p2(r, params_.density);
  if (density == 0.0) return 0.0;
  const double link = connection_probability(r);
  return density * (edge_present ? link : 1.0 - link);
}

double TheoryModel::p3(double r, bool edge_present) const {
  if (!(r >= 0.0 && r <= kSqrt2 + 1e-12)) throw InvalidArgument("p3: r must lie in [0, sqrt 2]");
  return joint(r, edge_present) / (edge_present ? z_edge_ : z_non_edge_);
}

double theoretical_auc(const TheoryParams& params) { return TheoryModel(params).auc(); }

double distance_auc(const std::function<double(double)>& first, const std::function<double(double)>& second,
                    std::size_t panels, std::size_t order) {
  const GaussLegendre rule(order);
  const auto grid = distance_panels(panels);
  const std::size_t np = grid.size();

  // Panel masses of the second density, and suffix sums for the tail beyond each panel.
  std::vector<double> mass(np);
  for (std::size_t p = 0; p < np; ++p) mass[p] = panel_sum(second, grid[p].lo, grid[p].hi, rule);
  std::vector<double> tail(np + 1, 0.0);
  for (std::size_t p = np; p-- > 0;) tail[p] = tail[p + 1] + mass[p];
  const double z2 = tail[0];

  double z1 = 0.0, acc = 0.0;
  for (std::size_t p = 0; p < np; ++p) {
    const double half = 0.5 * (grid[p].hi - grid[p].lo), mid = 0.5 * (grid[p].hi + grid[p].lo);
    for (std::size_t i = 0; i < rule.order(); ++i) {
      const double r = mid + half * rule.nodes[i];
      const double f = first(r) * rule.weights[i] * half;
      z1 += f;
      const double inner = panel_sum(second, r, grid[p].hi, rule) + tail[p + 1];
      acc += f * inner;
    }
  }
  if (!(z1 > 0) || !(z2 > 0)) throw Error("distance_auc: densities have no mass");
  return acc / (z1 * z2);
}

}  // namespace hs
