#include "hiddenspace/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "hiddenspace/error.hpp"
#include "hiddenspace/parallel.hpp"
#include "hiddenspace/rng.hpp"
#include "json.hpp"

namespace hs {

Split random_split(const Graph& g, double probe_fraction, std::uint64_t seed) {
  if (!(probe_fraction > 0 && probe_fraction < 1))
    throw InvalidArgument("random_split: probe fraction must lie in (0,1)");
  const auto m = g.edge_count();
  const auto probe_size = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(probe_fraction * static_cast<double>(m))));
  if (probe_size >= m) throw InvalidArgument("random_split: probe fraction leaves the training set empty");

  std::vector<NodePair> edges = g.edges();
  Rng rng(seed);
  for (std::size_t i = m - 1; i > 0; --i) std::swap(edges[i], edges[rng.index(i + 1)]);

  Split s;
  s.probe.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(probe_size));
  std::sort(s.probe.begin(), s.probe.end());
  const Graph rest = Graph::from_edges(
      g.node_count(), std::span<const NodePair>(edges.data() + probe_size, m - probe_size));

  std::vector<NodeId> keep;
  for (NodeId u = 0; u < rest.node_count(); ++u)
    if (rest.degree(u) > 0) keep.push_back(u);
  auto sub = induced_subgraph(rest, keep);
  s.train = std::move(sub.graph);
  s.retained = std::move(sub.parent_ids);

  constexpr auto absent = static_cast<NodeId>(-1);
  std::vector<NodeId> to_train(g.node_count(), absent);
  for (NodeId i = 0; i < s.retained.size(); ++i) to_train[s.retained[i]] = i;
  for (const auto& e : s.probe) {
    if (to_train[e.u] == absent || to_train[e.v] == absent) continue;
    s.scorable_probe.push_back(NodePair::make(to_train[e.u], to_train[e.v]));
  }
  std::sort(s.scorable_probe.begin(), s.scorable_probe.end());
  return s;
}

// ---------------------------------------------------------------------------

double auc_sampled(std::span<const double> probe, std::span<const double> non_edge,
                   std::size_t comparisons, std::uint64_t seed) {
  if (probe.empty() || non_edge.empty()) throw InvalidArgument("auc: empty probe or non-edge set");
  if (comparisons == 0) throw InvalidArgument("auc: comparison count must be positive");
  Rng rng(seed);
  std::size_t higher = 0, ties = 0;
  for (std::size_t c = 0; c < comparisons; ++c) {
    const double a = probe[rng.index(probe.size())];
    const double b = non_edge[rng.index(non_edge.size())];
    if (a > b) {
      ++higher;
    } else if (a == b) {
      ++ties;
    }
  }
  return (static_cast<double>(higher) + 0.5 * static_cast<double>(ties)) /
         static_cast<double>(comparisons);
}

double auc_exact(std::span<const double> probe, std::span<const double> non_edge) {
  if (probe.empty() || non_edge.empty()) throw InvalidArgument("auc: empty probe or non-edge set");
  // Mann-Whitney U with average ranks for ties.
  struct Item {
    double score;
    bool is_probe;
  };
  std::vector<Item> all;
  all.reserve(probe.size() + non_edge.size());
  for (double s : probe) all.push_back({s, true});
  for (double s : non_edge) all.push_back({s, false});
  for (const auto& it : all)
    if (std::isnan(it.score)) throw InvalidArgument("auc: NaN score");
  std::sort(all.begin(), all.end(), [](const Item& a, const Item& b) { return a.score < b.score; });

  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    std::size_t probes = 0;
    while (j < all.size() && all[j].score == all[i].score) probes += all[j++].is_probe;
    const double average_rank = 0.5 * static_cast<double>(i + 1 + j);
    rank_sum += average_rank * static_cast<double>(probes);
    i = j;
  }
  const double p = static_cast<double>(probe.size());
  const double q = static_cast<double>(non_edge.size());
  return (rank_sum - p * (p + 1) / 2) / (p * q);
}

namespace {

std::vector<double> lookup(const ScoreTable& t, std::span<const NodePair> pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(t.score(p));
  return out;
}

}  // namespace

double auc(const ScoreTable& scores, std::span<const NodePair> probe,
           std::span<const NodePair> non_edges, AucMode mode, std::size_t comparisons,
           std::uint64_t seed) {
  const auto a = lookup(scores, probe);
  const auto b = lookup(scores, non_edges);
  if (mode == AucMode::exact) return auc_exact(a, b);
  return auc_sampled(a, b, comparisons ? comparisons : std::min<std::size_t>(1'000'000, 1000 * probe.size()),
                     seed);
}

double precision_at(const ScoreTable& scores, std::span<const NodePair> probe, std::size_t top_l) {
  if (top_l == 0) throw InvalidArgument("precision: L must be >= 1");
  if (top_l > scores.size()) throw InvalidArgument("precision: L exceeds the number of candidates");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& pairs = *scores.pairs;
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores.scores[a] != scores.scores[b]) return scores.scores[a] > scores.scores[b];
    return pairs[a] < pairs[b];
  };
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top_l - 1), order.end(), better);
  std::unordered_set<std::uint64_t> wanted;
  for (const auto& p : probe) wanted.insert(NodePair::make(p.u, p.v).key());
  std::size_t hits = 0;
  for (std::size_t k = 0; k < top_l; ++k) hits += wanted.count(pairs[order[k]].key());
  return static_cast<double>(hits) / static_cast<double>(top_l);
}

// ---------------------------------------------------------------------------

namespace {

const std::vector<std::pair<std::string, MethodSpec::Kind>>& method_table() {
  static const std::vector<std::pair<std::string, MethodSpec::Kind>> table = {
      {"CN", MethodSpec::Kind::cn},     {"AA", MethodSpec::Kind::aa},
      {"RA", MethodSpec::Kind::ra},     {"Jaccard", MethodSpec::Kind::jaccard},
      {"Katz", MethodSpec::Kind::katz}, {"SPM", MethodSpec::Kind::spm},
      {"HS", MethodSpec::Kind::hs},     {"random", MethodSpec::Kind::random},
  };
  return table;
}

std::string kind_name(MethodSpec::Kind kind) {
  for (const auto& [name, k] : method_table())
    if (k == kind) return name;
  return "?";
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string valid_names() {
  std::string out;
  for (const auto& n : method_names()) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

std::vector<std::string> method_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : method_table()) out.push_back(name);
  out.push_back("hybrid:<CN|AA|RA|Jaccard|Katz|SPM>");
  return out;
}

MethodSpec parse_method(const std::string& name) {
  auto find = [&](const std::string& n) -> std::optional<MethodSpec::Kind> {
    for (const auto& [known, kind] : method_table())
      if (lower(known) == lower(n)) return kind;
    return std::nullopt;
  };
  MethodSpec method;
  const std::string prefix = "hybrid:";
  if (lower(name).rfind(prefix, 0) == 0) {
    auto base = find(name.substr(prefix.size()));
    if (!base || *base == MethodSpec::Kind::hs || *base == MethodSpec::Kind::random)
      throw InvalidArgument("unknown method '" + name + "'; valid: " + valid_names());
    method.kind = MethodSpec::Kind::hybrid;
    method.base = *base;
    method.name = "hybrid:" + kind_name(*base);
    return method;
  }
  auto kind = find(name);
  if (!kind) throw InvalidArgument("unknown method '" + name + "'; valid: " + valid_names());
  method.kind = *kind;
  method.name = kind_name(*kind);
  return method;
}

namespace {

ScoreTable score_simple(const MethodSpec& m, MethodSpec::Kind kind, const Graph& train,
                        const PairSetPtr& pairs, std::uint64_t seed) {
  switch (kind) {
    case MethodSpec::Kind::cn: return cn_scores(train, pairs);
    case MethodSpec::Kind::aa: return aa_scores(train, pairs);
    case MethodSpec::Kind::ra: return ra_scores(train, pairs);
    case MethodSpec::Kind::jaccard: return jaccard_scores(train, pairs);
    case MethodSpec::Kind::katz: return katz_scores(train, m.katz, pairs);
    case MethodSpec::Kind::spm: {
      SpmConfig cfg = m.spm;
      cfg.seed = derive_seed(cfg.seed, seed);
      return spm_scores(train, cfg, pairs);
    }
    case MethodSpec::Kind::hs: return hs_scores(embed_components(train, m.embedding), pairs);
    case MethodSpec::Kind::random: {
      Rng rng(seed);
      ScoreTable t{"random", pairs, std::vector<double>(pairs->size())};
      for (auto& s : t.scores) s = rng.uniform();
      return t;
    }
    case MethodSpec::Kind::hybrid: break;
  }
  throw InvalidArgument("score_method: nested hybrid");
}

}  // namespace

ScoreTable score_method(const MethodSpec& method, const Graph& train, const PairSetPtr& pairs,
                        std::uint64_t seed) {
  if (method.kind != MethodSpec::Kind::hybrid) {
    auto t = score_simple(method, method.kind, train, pairs, seed);
    t.method = method.name.empty() ? t.method : method.name;
    return t;
  }
  const auto base = score_simple(method, method.base, train, pairs, seed);
  const auto hs = score_simple(method, MethodSpec::Kind::hs, train, pairs, seed);
  auto t = hybrid_scores(base, hs, method.hybrid_mode);
  t.method = method.name;
  return t;
}

// ---------------------------------------------------------------------------

namespace {

struct RepOutcome {
  std::vector<double> auc;
  std::vector<double> precision;
  std::vector<std::optional<std::string>> error;
  std::size_t comparisons = 0;
};

std::pair<double, double> mean_stderr(const std::vector<double>& v) {
  if (v.empty()) return {NAN, NAN};
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1) / n)};
}

}  // namespace

std::vector<EvalReport> run_experiment(const Graph& g, const std::vector<MethodSpec>& methods,
                                       const ExperimentConfig& config) {
  if (config.repetitions == 0) throw InvalidArgument("run_experiment: repetitions must be >= 1");
  if (methods.empty()) throw InvalidArgument("run_experiment: no methods");
  const std::size_t k = methods.size();

  std::vector<RepOutcome> outcomes(config.repetitions);
  parallel_for(config.repetitions, [&](std::size_t rep) {
    auto& out = outcomes[rep];
    out.auc.assign(k, NAN);
    out.precision.assign(k, NAN);
    out.error.assign(k, std::nullopt);

    const auto rep_seed = derive_seed(config.seed, rep);
    const Split split = random_split(g, config.probe_fraction, derive_seed(rep_seed, "split"));
    const auto& probe = split.scorable_probe;
    if (probe.empty()) {
      for (auto& e : out.error) e = "no probe edge survives in the training graph";
      return;
    }
    const auto candidates = make_pair_set(all_non_edges(split.train));

    std::vector<NodePair> non_edges;
    {
      std::unordered_set<std::uint64_t> in_probe;
      for (const auto& p : probe) in_probe.insert(p.key());
      non_edges.reserve(candidates->size() - probe.size());
      for (const auto& p : *candidates)
        if (!in_probe.count(p.key())) non_edges.push_back(p);
    }
    if (non_edges.empty()) {
      for (auto& e : out.error) e = "training graph has no non-edges outside the probe set";
      return;
    }
    if (config.auc_mode == AucMode::exact && non_edges.size() > config.exact_nonedge_limit) {
      Rng rng(derive_seed(rep_seed, "nonedge-sample"));
      std::vector<NodePair> sample;
      const auto want = std::min(non_edges.size(), 10 * probe.size());
      for (std::size_t i = 0; i < want; ++i) sample.push_back(non_edges[rng.index(non_edges.size())]);
      non_edges = std::move(sample);
    }
    out.comparisons = config.auc_mode == AucMode::exact
                          ? probe.size() * non_edges.size()
                          : (config.comparisons ? config.comparisons
                                                : std::min<std::size_t>(1'000'000, 1000 * probe.size()));
    const auto auc_seed = derive_seed(rep_seed, "auc");

    for (std::size_t mi = 0; mi < k; ++mi) {
      try {
        const auto table = score_method(methods[mi], split.train, candidates,
                                        derive_seed(rep_seed, methods[mi].name));
        out.auc[mi] = auc(table, probe, non_edges, config.auc_mode, out.comparisons, auc_seed);
        out.precision[mi] = precision_at(table, probe, probe.size());
      } catch (const std::exception& ex) {
        out.error[mi] = ex.what();
      }
    }
  });

  std::vector<EvalReport> reports(k);
  for (std::size_t mi = 0; mi < k; ++mi) {
    auto& r = reports[mi];
    r.method = methods[mi].name;
    r.repetitions = config.repetitions;
    for (const auto& o : outcomes) {
      if (o.error[mi]) {
        if (!r.error) r.error = o.error[mi];
        continue;
      }
      r.auc_values.push_back(o.auc[mi]);
      r.precision_values.push_back(o.precision[mi]);
      r.n_comparisons = std::max(r.n_comparisons, o.comparisons);
    }
    std::tie(r.auc, r.auc_stderr) = mean_stderr(r.auc_values);
    std::tie(r.precision, r.precision_stderr) = mean_stderr(r.precision_values);
  }
  return reports;
}

void write_reports_json(std::ostream& out, const std::vector<EvalReport>& reports,
                        const std::string& network, const Metadata& meta) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : meta.entries()) j["metadata"][key] = value;
  j["network"] = network;
  auto& arr = j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json o;
    o["method"] = r.method;
    o["auc"] = r.auc;
    o["auc_stderr"] = r.auc_stderr;
    o["precision"] = r.precision;
    o["precision_stderr"] = r.precision_stderr;
    o["n_comparisons"] = r.n_comparisons;
    o["repetitions"] = r.repetitions;
    o["auc_values"] = r.auc_values;
    o["precision_values"] = r.precision_values;
    o["error"] = r.error ? nlohmann::ordered_json(*r.error) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(o));
  }
  out << j.dump(2) << '\n';
}

void write_reports_csv(std::ostream& out, const std::vector<EvalReport>& reports,
                       const std::string& network, const Metadata& meta) {
  meta.write_comment_header(out);
  out << "network,metric";
  for (const auto& r : reports) out << ',' << r.method;
  out << '\n';
  auto row = [&](const char* metric, auto field) {
    out << network << ',' << metric;
    for (const auto& r : reports) out << ',' << (r.error && r.auc_values.empty() ? "error" : format_double(field(r)));
    out << '\n';
  };
  row("auc", [](const EvalReport& r) { return r.auc; });
  row("auc_stderr", [](const EvalReport& r) { return r.auc_stderr; });
  row("precision", [](const EvalReport& r) { return r.precision; });
  row("precision_stderr", [](const EvalReport& r) { return r.precision_stderr; });
}

}  // namespace hs
