#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hiddenspace/baselines.hpp"
#include "hiddenspace/embedding.hpp"
#include "hiddenspace/graph.hpp"
#include "hiddenspace/output.hpp"
#include "hiddenspace/scores.hpp"

namespace hs {

/// Training graph plus held-out probe edges.
struct Split {
  /// Training edges over the nodes that keep degree >= 1, recompacted.
  Graph train;
  /// Probe edges in ids of the split graph.
  std::vector<NodePair> probe;
  /// train id -> id in the split graph.
  std::vector<NodeId> retained;
  /// Probe edges with both endpoints in train, in train ids.
  std::vector<NodePair> scorable_probe;
};

/// Uniform edge partition with |probe| = max(1, round(fraction * |E|)).
Split random_split(const Graph& g, double probe_fraction, std::uint64_t seed);

enum class AucMode { sampled, exact };

/// AUC = (n1 + 0.5 n2) / n over probe-vs-non-edge comparisons. `sampled`
/// draws `comparisons` random pairs; `exact` uses the Mann-Whitney statistic
/// over the full cross product.
double auc(const ScoreTable& scores, std::span<const NodePair> probe,
           std::span<const NodePair> non_edges, AucMode mode, std::size_t comparisons = 0,
           std::uint64_t seed = 0);

/// Same computation on raw score lists.
double auc_sampled(std::span<const double> probe, std::span<const double> non_edge,
                   std::size_t comparisons, std::uint64_t seed);
double auc_exact(std::span<const double> probe, std::span<const double> non_edge);

/// Hits among the top-L pairs of the table (descending score, ties by
/// lexicographic pair order), divided by L.
double precision_at(const ScoreTable& scores, std::span<const NodePair> probe, std::size_t top_l);

/// A scoring method as named on the command line.
struct MethodSpec {
  enum class Kind { cn, aa, ra, jaccard, katz, spm, hs, hybrid, random };
  Kind kind = Kind::hs;
  /// Index combined with HS for `hybrid`.
  Kind base = Kind::cn;
  std::string name;
  EmbeddingConfig embedding;
  KatzConfig katz;
  SpmConfig spm;
  HybridMode hybrid_mode = HybridMode::distance_quotient;
};

/// Parses "CN", "AA", "RA", "Jaccard", "Katz", "SPM", "HS", "random" or
/// "hybrid:<index>"; throws InvalidArgument listing valid names otherwise.
MethodSpec parse_method(const std::string& name);
std::vector<std::string> method_names();

/// Scores every pair of `pairs` on `train` with one method.
ScoreTable score_method(const MethodSpec& method, const Graph& train, const PairSetPtr& pairs,
                        std::uint64_t seed);

struct EvalReport {
  std::string method;
  double auc = 0.0;
  double auc_stderr = 0.0;
  double precision = 0.0;
  double precision_stderr = 0.0;
  std::size_t n_comparisons = 0;
  std::size_t repetitions = 0;
  std::vector<double> auc_values;
  std::vector<double> precision_values;
  /// Set when the method failed; metrics are then meaningless.
  std::optional<std::string> error;
};

struct ExperimentConfig {
  double probe_fraction = 0.1;
  std::size_t repetitions = 10;
  std::uint64_t seed = 1;
  AucMode auc_mode = AucMode::sampled;
  /// Sampled comparisons; 0 means min(10^6, 1000 * |probe|).
  std::size_t comparisons = 0;
  /// Exact mode on graphs with more candidates than this uses a sample of
  /// 10 * |probe| non-edges.
  std::size_t exact_nonedge_limit = 2'000'000;
};

/// Repeated split / score / evaluate; repetitions run in parallel with
/// derived seeds, so the output depends only on the configuration.
std::vector<EvalReport> run_experiment(const Graph& g, const std::vector<MethodSpec>& methods,
                                       const ExperimentConfig& config);

void write_reports_json(std::ostream& out, const std::vector<EvalReport>& reports,
                        const std::string& network, const Metadata& meta);
/// Rows auc / auc_stderr / precision / precision_stderr, one column per method.
void write_reports_csv(std::ostream& out, const std::vector<EvalReport>& reports,
                       const std::string& network, const Metadata& meta);

}  // namespace hs
