#include "hiddenspace/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "hiddenspace/error.hpp"
#include "hiddenspace/rng.hpp"

namespace hs {

SelectedParams select_params(const AucOracle& auc_at, std::vector<double> alpha_grid,
                             std::vector<std::size_t> dim_grid) {
  if (alpha_grid.empty() || dim_grid.empty()) throw InvalidArgument("select_params: empty grid");
  std::sort(alpha_grid.begin(), alpha_grid.end());
  std::sort(dim_grid.begin(), dim_grid.end());

  SelectedParams out;
  out.anchor_dim = *std::min_element(dim_grid.begin(), dim_grid.end(), [](std::size_t a, std::size_t b) {
    const auto da = a > 3 ? a - 3 : 3 - a;
    const auto db = b > 3 ? b - 3 : 3 - b;
    return da < db || (da == db && a < b);
  });

  double best = -INFINITY;
  for (double a : alpha_grid) {
    const double v = auc_at(a, out.anchor_dim);
    out.alpha_profile.push_back(v);
    if (v > best) {
      best = v;
      out.alpha = a;
    }
  }
  best = -INFINITY;
  for (auto d : dim_grid) {
    const double v = auc_at(out.alpha, d);
    out.dim_profile.push_back(v);
    if (v > best) {
      best = v;
      out.dim = d;
    }
  }
  out.auc = best;
  return out;
}

SelectedParams select_params(const Split& split, const std::vector<double>& alpha_grid,
                             const std::vector<std::size_t>& dim_grid, const TuningConfig& config) {
  const Split inner = random_split(split.train, config.validation_fraction,
                                   derive_seed(config.seed, "validation"));
  const auto& probe = inner.scorable_probe;
  if (probe.empty()) throw InvalidArgument("select_params: validation split has no scorable edges");
  const auto candidates = make_pair_set(all_non_edges(inner.train));
  std::unordered_set<std::uint64_t> in_probe;
  for (const auto& p : probe) in_probe.insert(p.key());
  std::vector<NodePair> non_edges;
  for (const auto& p : *candidates)
    if (!in_probe.count(p.key())) non_edges.push_back(p);

  const auto comparisons = std::min<std::size_t>(1'000'000, 1000 * probe.size());
  const auto auc_seed = derive_seed(config.seed, "auc");
  auto oracle = [&](double alpha, std::size_t dim) {
    EmbeddingConfig cfg = config.embedding;
    cfg.alpha = alpha;
    cfg.dim = dim;
    const auto table = hs_scores(embed_components(inner.train, cfg), candidates);
    return auc(table, probe, non_edges, config.auc_mode, comparisons, auc_seed);
  };
  return select_params(oracle, alpha_grid, dim_grid);
}

std::vector<double> default_alpha_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 40; ++i) g.push_back(0.05 * i);
  return g;
}

std::vector<std::size_t> default_dim_grid() {
  std::vector<std::size_t> g;
  for (std::size_t d = 1; d <= 40; ++d) g.push_back(d);
  return g;
}

}  // namespace hs
