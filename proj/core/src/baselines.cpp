#include "hiddenspace/baselines.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <map>

#include "hiddenspace/eigensolver.hpp"
#include "hiddenspace/error.hpp"
#include "hiddenspace/parallel.hpp"
#include "hiddenspace/rng.hpp"

namespace hs {

namespace {

void check_pairs(const Graph& g, const PairSet& pairs) {
  for (const auto& p : pairs)
    if (p.v >= g.node_count()) throw InvalidArgument("pair refers to a node outside the graph");
}

// Calls visit(z) for each common neighbour of u and v (sorted-list merge).
template <class Visit>
void for_common_neighbors(const Graph& g, NodeId u, NodeId v, Visit&& visit) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      visit(*i);
      ++i;
      ++j;
    }
  }
}

template <class PerPair>
ScoreTable local_index(const Graph& g, const PairSetPtr& pairs, std::string name, PerPair&& f) {
  check_pairs(g, *pairs);
  ScoreTable t{std::move(name), pairs, std::vector<double>(pairs->size())};
  for (std::size_t k = 0; k < pairs->size(); ++k) t.scores[k] = f((*pairs)[k]);
  return t;
}

SparseMatrix adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(2 * g.edge_count());
  for (const auto& e : g.edges()) {
    t.emplace_back(e.u, e.v, 1.0);
    t.emplace_back(e.v, e.u, 1.0);
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

}  // namespace

ScoreTable cn_scores(const Graph& g, const PairSetPtr& pairs) {
  return local_index(g, pairs, "CN", [&](NodePair p) {
    double s = 0;
    for_common_neighbors(g, p.u, p.v, [&](NodeId) { s += 1; });
    return s;
  });
}

ScoreTable jaccard_scores(const Graph& g, const PairSetPtr& pairs) {
  return local_index(g, pairs, "Jaccard", [&](NodePair p) {
    std::size_t common = 0;
    for_common_neighbors(g, p.u, p.v, [&](NodeId) { ++common; });
    const std::size_t uni = g.degree(p.u) + g.degree(p.v) - common;
    return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
  });
}

ScoreTable ra_scores(const Graph& g, const PairSetPtr& pairs) {
  return local_index(g, pairs, "RA", [&](NodePair p) {
    double s = 0;
    for_common_neighbors(g, p.u, p.v, [&](NodeId z) { s += 1.0 / static_cast<double>(g.degree(z)); });
    return s;
  });
}

ScoreTable aa_scores(const Graph& g, const PairSetPtr& pairs) {
  return local_index(g, pairs, "AA", [&](NodePair p) {
    double s = 0;
    for_common_neighbors(g, p.u, p.v, [&](NodeId z) {
      const auto k = g.degree(z);
      if (k > 1) s += 1.0 / std::log(static_cast<double>(k));
    });
    return s;
  });
}

// ---------------------------------------------------------------------------

double spectral_radius(const Graph& g) {
  const auto n = g.node_count();
  if (g.edge_count() == 0) return 0.0;
  if (n <= 400) return dense_symmetric_eigen(Matrix(adjacency(g))).values[0];
  LanczosOptions opt;
  opt.count = 1;
  opt.tolerance = 1e-10;
  opt.max_matvecs = 50 * n;
  return lanczos_largest(adjacency(g), opt).values[0];
}

double katz_attenuation(const Graph& g, const KatzConfig& config) {
  const double lambda = spectral_radius(g);
  if (config.auto_scale) return lambda > 0 ? 0.5 / lambda : 0.0;
  const double a = config.attenuation;
  if (a < 0) throw InvalidArgument("katz: attenuation must be non-negative");
  if (a * lambda >= 1.0 - 1e-12) throw InvalidArgument("katz: series diverges (attenuation >= 1/lambda_max)");
  return a;
}

ScoreTable katz_scores(const Graph& g, const KatzConfig& config, const PairSetPtr& pairs) {
  check_pairs(g, *pairs);
  const double a = katz_attenuation(g, config);
  ScoreTable t{"Katz", pairs, std::vector<double>(pairs->size(), 0.0)};
  if (a == 0.0 || pairs->size() == 0) return t;

  const auto n = static_cast<Eigen::Index>(g.node_count());
  const SparseMatrix adj = adjacency(g);

  // Group queried pairs by their first endpoint; one solve per distinct column.
  std::map<NodeId, std::vector<std::size_t>> by_column;
  for (std::size_t k = 0; k < pairs->size(); ++k) by_column[(*pairs)[k].u].push_back(k);

  auto fill = [&](NodeId col, const Vector& x) {
    for (auto k : by_column[col]) t.scores[k] = x[(*pairs)[k].v];
  };

  if (n <= 2000) {
    Matrix m = Matrix::Identity(n, n) - a * Matrix(adj);
    Eigen::LDLT<Matrix> ldlt(m);
    if (ldlt.info() != Eigen::Success) throw Error("katz: factorisation failed");
    for (const auto& [col, _] : by_column) {
      Vector rhs = Vector::Zero(n);
      rhs[col] = 1.0;
      Vector x = ldlt.solve(rhs);
      x[col] -= 1.0;
      fill(col, x);
    }
  } else {
    Eigen::SparseMatrix<double> m(n, n);
    m.setIdentity();
    m -= a * Eigen::SparseMatrix<double>(adj);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(m);
    if (ldlt.info() != Eigen::Success) throw Error("katz: sparse factorisation failed");
    for (const auto& [col, _] : by_column) {
      Vector rhs = Vector::Zero(n);
      rhs[col] = 1.0;
      Vector x = ldlt.solve(rhs);
      x[col] -= 1.0;
      fill(col, x);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd spm_reconstruction(const Graph& remaining, std::span<const NodePair> removed) {
  const auto eig = dense_symmetric_eigen(Matrix(adjacency(remaining)));
  const auto n = eig.values.size();
  Vector corrected(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto x = eig.vectors.col(k);
    double shift = 0.0;
    for (const auto& e : removed) shift += 2.0 * x[e.u] * x[e.v];
    corrected[k] = eig.values[k] + shift / x.squaredNorm();
  }
  return eig.vectors * corrected.asDiagonal() * eig.vectors.transpose();
}

ScoreTable spm_scores(const Graph& g, const SpmConfig& config, const PairSetPtr& pairs) {
  check_pairs(g, *pairs);
  if (!(config.perturb_fraction > 0 && config.perturb_fraction < 1))
    throw InvalidArgument("spm: perturb_fraction must lie in (0,1)");
  if (config.repetitions == 0) throw InvalidArgument("spm: repetitions must be >= 1");
  const auto m = g.edge_count();
  if (config.perturb_fraction * static_cast<double>(m) < 1.0)
    throw InvalidArgument("spm: graph too small for the requested perturbation fraction");
  const auto removed_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(config.perturb_fraction * static_cast<double>(m))));
  const auto n = g.node_count();

  std::vector<std::vector<double>> per_rep(config.repetitions);
  parallel_for(config.repetitions, [&](std::size_t rep) {
    Rng rng(derive_seed(config.seed, rep));
    std::vector<NodePair> edges = g.edges();
    // Partial Fisher-Yates: the first removed_count entries are the perturbation.
    for (std::size_t i = 0; i < removed_count; ++i)
      std::swap(edges[i], edges[i + rng.index(m - i)]);
    const std::span<const NodePair> removed(edges.data(), removed_count);
    const Graph rest = Graph::from_edges(
        n, std::span<const NodePair>(edges.data() + removed_count, m - removed_count));

    auto& out = per_rep[rep];
    out.resize(pairs->size());
    if (n <= config.dense_limit) {
      const Matrix recon = spm_reconstruction(rest, removed);
      for (std::size_t k = 0; k < pairs->size(); ++k) out[k] = recon((*pairs)[k].u, (*pairs)[k].v);
    } else {
      LanczosOptions opt;
      opt.count = std::min(config.top_k, n);
      opt.tolerance = 1e-8;
      opt.max_matvecs = 50 * n;
      const auto eig = lanczos_largest(adjacency(rest), opt);
      Vector corrected = eig.values;
      for (Eigen::Index k = 0; k < corrected.size(); ++k) {
        const auto x = eig.vectors.col(k);
        double shift = 0.0;
        for (const auto& e : removed) shift += 2.0 * x[e.u] * x[e.v];
        corrected[k] += shift;
      }
      for (std::size_t k = 0; k < pairs->size(); ++k) {
        const auto& p = (*pairs)[k];
        out[k] = (eig.vectors.row(p.u).cwiseProduct(corrected.transpose())).dot(eig.vectors.row(p.v));
      }
    }
  });

  ScoreTable t{"SPM", pairs, std::vector<double>(pairs->size(), 0.0)};
  for (const auto& rep : per_rep)
    for (std::size_t k = 0; k < rep.size(); ++k) t.scores[k] += rep[k];
  for (auto& s : t.scores) s /= static_cast<double>(config.repetitions);
  return t;
}

// ---------------------------------------------------------------------------

ScoreTable hybrid_scores(const ScoreTable& index, const ScoreTable& hs, HybridMode mode) {
  if (index.pairs != hs.pairs && index.pairs->pairs() != hs.pairs->pairs())
    throw InvalidArgument("hybrid: score tables cover different pair sets");
  constexpr double eps = 1e-12;
  ScoreTable t{index.method + "*HS", index.pairs, std::vector<double>(index.size())};
  for (std::size_t k = 0; k < index.size(); ++k) {
    const double s = index.scores[k];
    const double d = -hs.scores[k];
    if (s == 0.0) {
      t.scores[k] = 0.0;
    } else if (mode == HybridMode::product) {
      t.scores[k] = s * -d;
    } else {
      t.scores[k] = s / (d + eps);
    }
  }
  return t;
}

}  // namespace hs
