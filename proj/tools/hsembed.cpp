// hsembed: hidden-space embedding, link prediction and model experiments.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hiddenspace/embedding.hpp"
#include "hiddenspace/error.hpp"
#include "hiddenspace/evaluation.hpp"
#include "hiddenspace/geo.hpp"
#include "hiddenspace/graph.hpp"
#include "hiddenspace/newtonian.hpp"
#include "hiddenspace/output.hpp"
#include "hiddenspace/theory.hpp"
#include "hiddenspace/tuning.hpp"

namespace {

using namespace hs;

constexpr int kComputeFailure = 1;
constexpr int kUsageFailure = 2;

// "x", "a,b,c" or "start:step:stop" (inclusive, rounded to the step).
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidArgument("bad grid value '" + s + "' in '" + text + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InvalidArgument("grid '" + text + "' must be start:step:stop");
    const double a = number(parts[0]), step = number(parts[1]), b = number(parts[2]);
    if (!(step > 0) || b < a) throw InvalidArgument("grid '" + text + "' is empty");
    const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(a + step * static_cast<double>(i));
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  if (out.empty()) throw InvalidArgument("empty grid");
  return out;
}

std::vector<std::size_t> parse_dim_grid(const std::string& spec) {
  std::vector<std::size_t> dims;
  for (double v : parse_grid(spec)) {
    if (!(v >= 1) || v != std::floor(v)) throw InvalidArgument("dimension grid '" + spec + "' needs positive integers");
    dims.push_back(static_cast<std::size_t>(v));
  }
  return dims;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

// Output goes to `path`, or stdout when the path is empty.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw IoError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (!file_) return std::cout.flush(), void();
    file_->close();
    if (!*file_) throw IoError("failed writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
};

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

Metadata base_metadata(const std::string& command, std::uint64_t seed) {
  Metadata m;
  m.set("hiddenspace_version", kVersion).set("command", command).set("seed", static_cast<unsigned long long>(seed));
  return m;
}

struct GiantComponent {
  Graph graph;
  NodeIdMap labels;
  std::size_t input_nodes;
  std::size_t input_edges;
};

GiantComponent load_giant(const std::string& path) {
  auto lg = read_edge_list(path);
  auto gc = giant_component(lg.graph);
  return {std::move(gc.graph), lg.labels.restrict(gc.parent_ids), lg.graph.node_count(), lg.graph.edge_count()};
}

// ---------------------------------------------------------------- embed

struct EmbedOptions {
  std::string graph;
  double alpha = 1.0;
  std::size_t dim = 3;
  double eig_tol = 1e-8;
  std::string route = "auto";
};

EigenRoute parse_route(const std::string& s) {
  if (s == "auto") return EigenRoute::automatic;
  if (s == "dense") return EigenRoute::dense;
  if (s == "iterative") return EigenRoute::iterative;
  throw InvalidArgument("unknown eigen route '" + s + "'");
}

int run_embed(const EmbedOptions& o, const Common& c) {
  const auto g = load_giant(o.graph);
  EmbeddingConfig cfg;
  cfg.alpha = o.alpha;
  cfg.dim = o.dim;
  cfg.eig_tol = o.eig_tol;
  cfg.route = parse_route(o.route);
  const auto e = embed(g.graph, cfg);

  auto meta = base_metadata("embed", c.seed);
  meta.set("input", o.graph).set("alpha", o.alpha).set("dim", o.dim).set("eig_tol", o.eig_tol);
  meta.set("nodes", g.graph.node_count()).set("edges", g.graph.edge_count());

  Sink coords(c.out + ".coords.csv");
  write_coordinates_csv(coords.stream(), e, g.labels, meta);
  coords.close();
  Sink values(c.out + ".eigenvalues.json");
  write_eigenvalues_json(values.stream(), e, meta);
  values.close();
  Sink map(c.out + ".nodemap.csv");
  g.labels.write_csv(map.stream());
  map.close();
  return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string graph;
  std::string methods = "CN,AA,RA,Jaccard,Katz,SPM,HS";
  double alpha = 1.0;
  std::size_t dim = 3;
  double probe_fraction = 0.1;
  std::size_t reps = 10;
  std::string auc_mode = "sampled";
  std::size_t comparisons = 0;
  std::string hybrid = "quotient";
};

int run_evaluate(const EvaluateOptions& o, const Common& c) {
  std::vector<MethodSpec> methods;
  std::stringstream ss(o.methods);
  for (std::string name; std::getline(ss, name, ',');) {
    if (name.empty()) continue;
    auto m = parse_method(name);
    m.embedding.alpha = o.alpha;
    m.embedding.dim = o.dim;
    if (o.hybrid == "product") m.hybrid_mode = HybridMode::product;
    else if (o.hybrid == "quotient") m.hybrid_mode = HybridMode::distance_quotient;
    else throw InvalidArgument("unknown hybrid mode '" + o.hybrid + "' (product, quotient)");
    methods.push_back(std::move(m));
  }
  if (methods.empty()) throw InvalidArgument("no methods given");
  ExperimentConfig cfg;
  cfg.probe_fraction = o.probe_fraction;
  cfg.repetitions = o.reps;
  cfg.seed = c.seed;
  cfg.comparisons = o.comparisons;
  if (o.auc_mode == "exact") cfg.auc_mode = AucMode::exact;
  else if (o.auc_mode != "sampled") throw InvalidArgument("unknown AUC mode '" + o.auc_mode + "' (sampled, exact)");

  const auto g = load_giant(o.graph);
  const auto reports = run_experiment(g.graph, methods, cfg);

  auto meta = base_metadata("evaluate", c.seed);
  meta.set("input", o.graph).set("methods", o.methods).set("alpha", o.alpha).set("dim", o.dim);
  meta.set("probe_fraction", o.probe_fraction).set("reps", o.reps).set("auc_mode", o.auc_mode);
  meta.set("hybrid", o.hybrid).set("nodes", g.graph.node_count()).set("edges", g.graph.edge_count());

  Sink sink(c.out);
  if (c.format == "json") write_reports_json(sink.stream(), reports, o.graph, meta);
  else write_reports_csv(sink.stream(), reports, o.graph, meta);
  sink.close();
  for (const auto& r : reports)
    if (r.error) std::cerr << "hsembed: " << r.method << ": " << *r.error << '\n';
  for (const auto& r : reports)
    if (r.auc_values.empty()) return kComputeFailure;
  return 0;
}

// ---------------------------------------------------------------- generate

int run_generate(const ModelParams& p, const Common& c) {
  const auto m = generate(p);
  auto meta = base_metadata("generate", p.seed);
  meta.set("nodes", p.nodes).set("gamma", p.gamma).set("k0", p.k0).set("beta", p.beta);
  meta.set("mean_degree", p.mean_degree).set("dimension", p.dim).set("mu", p.mu());
  meta.set("kept_nodes", m.graph.node_count()).set("edges", m.graph.edge_count());

  std::vector<std::string> comments;
  for (const auto& [k, v] : meta.entries()) comments.push_back(k + "=" + v);
  Sink edges(c.out + ".edges");
  write_edge_list(edges.stream(), m.graph, m.labels, comments);
  edges.close();
  Sink coords(c.out + ".coords.csv");
  write_coordinates(coords.stream(), m.coords, m.labels, meta);
  coords.close();
  return 0;
}

// ---------------------------------------------------------------- correlate

struct CorrelateOptions {
  std::string graph;
  std::string coords;
  std::string alphas = "0:0.05:2";
  std::string dims = "1:1:10";
  std::string metric = "euclidean";
  std::size_t pair_budget = 2'000'000;
};

int run_correlate(const CorrelateOptions& o, const Common& c) {
  Metric metric;
  if (o.metric == "euclidean") metric = Metric::euclidean;
  else if (o.metric == "haversine") metric = Metric::haversine;
  else throw InvalidArgument("unknown metric '" + o.metric + "' (euclidean, haversine)");
  const auto alphas = parse_grid(o.alphas);
  const auto dims = parse_dim_grid(o.dims);

  const auto g = load_giant(o.graph);
  const auto coords = read_coordinates(o.coords).align(g.labels, metric);
  const auto scan = scan_grid(g.graph, coords, alphas, dims, {}, o.pair_budget, c.seed);

  auto meta = base_metadata("correlate", c.seed);
  meta.set("input", o.graph).set("coords", o.coords).set("metric", o.metric).set("alphas", o.alphas);
  meta.set("dims", o.dims).set("pair_budget", o.pair_budget).set("nodes", g.graph.node_count());
  Sink sink(c.out);
  write_grid_csv(sink.stream(), scan, meta);
  sink.close();
  for (const auto& row : scan.errors)
    for (const auto& e : row)
      if (e) std::cerr << "hsembed: " << *e << '\n';
  return std::isnan(scan.best_value) ? kComputeFailure : 0;
}

// ---------------------------------------------------------------- theory

struct TheoryOptions {
  TheoryParams params;
  std::string density = "corrected";
  std::string weighting = "edge-biased";
  std::string beta_grid;
};

int run_theory(TheoryOptions o, const Common& c) {
  if (o.density == "corrected") o.params.density = DistanceDensity::corrected;
  else if (o.density == "as-written") o.params.density = DistanceDensity::as_written;
  else throw InvalidArgument("unknown density '" + o.density + "' (corrected, as-written)");
  if (o.weighting == "edge-biased") o.params.weighting = DegreeWeighting::edge_biased;
  else if (o.weighting == "plain") o.params.weighting = DegreeWeighting::plain;
  else throw InvalidArgument("unknown weighting '" + o.weighting + "' (edge-biased, plain)");

  const auto betas = o.beta_grid.empty() ? std::vector<double>{o.params.beta} : parse_grid(o.beta_grid);
  auto meta = base_metadata("theory", c.seed);
  meta.set("gamma", o.params.gamma).set("k0", o.params.k0).set("mean_degree", o.params.mean_degree);
  meta.set("density", o.density).set("weighting", o.weighting).set("panels", o.params.panels);
  meta.set("order", o.params.order).set("degree_nodes", o.params.degree_nodes).set("tail_mass", o.params.tail_mass);

  Sink sink(c.out);
  auto& out = sink.stream();
  meta.write_comment_header(out);
  out << "beta,auc,link_probability\n";
  for (double beta : betas) {
    auto p = o.params;
    p.beta = beta;
    const TheoryModel m(p);
    out << format_double(beta) << ',' << format_double(m.auc()) << ',' << format_double(m.link_probability())
        << '\n';
  }
  sink.close();
  return 0;
}

// ---------------------------------------------------------------- tune

struct TuneOptions {
  std::string graph;
  std::string alphas = "0:0.05:2";
  std::string dims = "1:1:40";
  double probe_fraction = 0.1;
  double validation_fraction = 0.1;
};

int run_tune(const TuneOptions& o, const Common& c) {
  const auto alphas = parse_grid(o.alphas);
  const auto dims = parse_dim_grid(o.dims);
  const auto g = load_giant(o.graph);
  const auto split = random_split(g.graph, o.probe_fraction, derive_seed(c.seed, "split"));
  TuningConfig cfg;
  cfg.validation_fraction = o.validation_fraction;
  cfg.seed = derive_seed(c.seed, "tune");
  const auto sel = select_params(split, alphas, dims, cfg);

  // Held-out AUC of the selected parameters on the original probe set.
  double test_auc = NAN;
  if (!split.scorable_probe.empty()) {
    MethodSpec hs_method = parse_method("HS");
    hs_method.embedding.alpha = sel.alpha;
    hs_method.embedding.dim = sel.dim;
    auto candidates = all_non_edges(split.train);
    const auto pairs = make_pair_set(candidates);
    const auto table = score_method(hs_method, split.train, pairs, c.seed);
    std::vector<NodePair> non_edges;
    std::vector<std::uint64_t> probe_keys;
    for (const auto& p : split.scorable_probe) probe_keys.push_back(p.key());
    std::sort(probe_keys.begin(), probe_keys.end());
    for (const auto& p : candidates)
      if (!std::binary_search(probe_keys.begin(), probe_keys.end(), p.key())) non_edges.push_back(p);
    test_auc = auc(table, split.scorable_probe, non_edges, AucMode::exact);
  }

  auto meta = base_metadata("tune", c.seed);
  meta.set("input", o.graph).set("alphas", o.alphas).set("dims", o.dims);
  meta.set("probe_fraction", o.probe_fraction).set("validation_fraction", o.validation_fraction);

  Sink sink(c.out);
  auto& out = sink.stream();
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta.entries()) j["metadata"][k] = v;
    j["alpha"] = sel.alpha;
    j["dim"] = sel.dim;
    j["validation_auc"] = sel.auc;
    j["test_auc"] = std::isnan(test_auc) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(test_auc);
    j["anchor_dim"] = sel.anchor_dim;
    j["alpha_grid"] = alphas;
    j["alpha_profile"] = sel.alpha_profile;
    j["dim_grid"] = dims;
    j["dim_profile"] = sel.dim_profile;
    out << j.dump(2) << '\n';
  } else {
    meta.write_comment_header(out);
    out << "key,value\n";
    out << "alpha," << format_double(sel.alpha) << '\n';
    out << "dim," << sel.dim << '\n';
    out << "validation_auc," << format_double(sel.auc) << '\n';
    out << "test_auc," << format_double(test_auc) << '\n';
    out << "anchor_dim," << sel.anchor_dim << '\n';
    out << "alpha_profile,\"" << join(sel.alpha_profile) << "\"\n";
    out << "dim_profile,\"" << join(sel.dim_profile) << "\"\n";
  }
  sink.close();
  return 0;
}

// Expands "--config FILE" into "--key=value" arguments for every key not
// already given as a flag, so flags win over the file and the file over defaults.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::vector<std::string> extra;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path + ": expected key=value", line_no);
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config") continue;
    if (!given("--" + key)) extra.push_back("--" + key + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

void add_common(CLI::App* sub, Common& c, bool prefix_out, bool with_format) {
  sub->add_option("--config", "Flat key=value file; flags given on the command line win");
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  if (prefix_out)
    sub->add_option("--out", c.out, "Output path prefix")->required();
  else
    sub->add_option("--out", c.out, "Output file (stdout when omitted)");
  if (with_format)
    sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden-space embedding and link prediction"};
  app.set_version_flag("--version", std::string(hs::kVersion));
  app.require_subcommand(1);

  Common common;

  EmbedOptions eo;
  auto* embed_cmd = app.add_subcommand("embed", "Embed the giant component of a graph");
  embed_cmd->add_option("graph", eo.graph, "Edge list")->required();
  embed_cmd->add_option("--alpha", eo.alpha, "Degree exponent alpha")->capture_default_str();
  embed_cmd->add_option("--dim", eo.dim, "Number of coordinates")->capture_default_str();
  embed_cmd->add_option("--eig-tol", eo.eig_tol, "Eigen-residual tolerance")->capture_default_str();
  embed_cmd->add_option("--route", eo.route, "Eigensolver: auto, dense or iterative")->capture_default_str();
  add_common(embed_cmd, common, true, false);

  EvaluateOptions vo;
  auto* eval_cmd = app.add_subcommand("evaluate", "Link-prediction AUC and precision over random splits");
  eval_cmd->add_option("graph", vo.graph, "Edge list")->required();
  eval_cmd->add_option("--methods", vo.methods, "Comma-separated methods")->capture_default_str();
  eval_cmd->add_option("--alpha", vo.alpha, "HS degree exponent")->capture_default_str();
  eval_cmd->add_option("--dim", vo.dim, "HS dimension")->capture_default_str();
  eval_cmd->add_option("--probe-fraction", vo.probe_fraction, "Held-out edge fraction")->capture_default_str();
  eval_cmd->add_option("--reps", vo.reps, "Repetitions")->capture_default_str();
  eval_cmd->add_option("--auc", vo.auc_mode, "AUC mode: sampled or exact")->capture_default_str();
  eval_cmd->add_option("--comparisons", vo.comparisons, "Sampled comparisons (0 = automatic)");
  eval_cmd->add_option("--hybrid", vo.hybrid, "Hybrid mode: quotient or product")->capture_default_str();
  add_common(eval_cmd, common, false, true);

  hs::ModelParams mp;
  auto* gen_cmd = app.add_subcommand("generate", "Sample a geometric scale-free model network");
  gen_cmd->add_option("--nodes", mp.nodes, "Node count")->capture_default_str();
  gen_cmd->add_option("--gamma", mp.gamma, "Degree exponent")->capture_default_str();
  gen_cmd->add_option("--k0", mp.k0, "Minimum expected degree")->capture_default_str();
  gen_cmd->add_option("--beta", mp.beta, "Kernel exponent")->capture_default_str();
  gen_cmd->add_option("--mean-degree", mp.mean_degree, "Target mean degree")->capture_default_str();
  gen_cmd->add_option("--dimension", mp.dim, "Space dimension")->capture_default_str();
  add_common(gen_cmd, common, true, false);

  CorrelateOptions co;
  auto* corr_cmd = app.add_subcommand("correlate", "Spearman of hidden vs real distances over an (alpha, d) grid");
  corr_cmd->add_option("graph", co.graph, "Edge list")->required();
  corr_cmd->add_option("coords", co.coords, "Coordinate CSV")->required();
  corr_cmd->add_option("--alpha", co.alphas, "Alpha grid: x, a,b,c or start:step:stop")->capture_default_str();
  corr_cmd->add_option("--dim", co.dims, "Dimension grid")->capture_default_str();
  corr_cmd->add_option("--metric", co.metric, "euclidean or haversine")->capture_default_str();
  corr_cmd->add_option("--pair-budget", co.pair_budget, "Pairs above which Spearman is sampled")
      ->capture_default_str();
  add_common(corr_cmd, common, false, false);

  TheoryOptions to;
  auto* theory_cmd = app.add_subcommand("theory", "Theoretical AUC of distance-ranked link prediction");
  theory_cmd->add_option("--gamma", to.params.gamma, "Degree exponent")->capture_default_str();
  theory_cmd->add_option("--k0", to.params.k0, "Minimum expected degree")->capture_default_str();
  theory_cmd->add_option("--beta", to.params.beta, "Kernel exponent")->capture_default_str();
  theory_cmd->add_option("--mean-degree", to.params.mean_degree, "Mean degree in mu")->capture_default_str();
  theory_cmd->add_option("--density", to.density, "corrected or as-written")->capture_default_str();
  theory_cmd->add_option("--weighting", to.weighting, "edge-biased or plain")->capture_default_str();
  theory_cmd->add_option("--beta-grid", to.beta_grid, "Beta grid for a curve");
  theory_cmd->add_option("--panels", to.params.panels, "Quadrature panels")->capture_default_str();
  add_common(theory_cmd, common, false, false);

  TuneOptions uo;
  auto* tune_cmd = app.add_subcommand("tune", "Select (alpha, d) on a validation split");
  tune_cmd->add_option("graph", uo.graph, "Edge list")->required();
  tune_cmd->add_option("--alpha", uo.alphas, "Alpha grid")->capture_default_str();
  tune_cmd->add_option("--dim", uo.dims, "Dimension grid")->capture_default_str();
  tune_cmd->add_option("--probe-fraction", uo.probe_fraction, "Held-out edge fraction")->capture_default_str();
  tune_cmd->add_option("--validation-fraction", uo.validation_fraction, "Validation fraction of training edges")
      ->capture_default_str();
  add_common(tune_cmd, common, false, true);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const hs::Error& e) {
    std::cerr << "hsembed: " << e.what() << '\n';
    return kUsageFailure;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageFailure;
  }

  try {
    if (*embed_cmd) return run_embed(eo, common);
    if (*eval_cmd) return run_evaluate(vo, common);
    if (*gen_cmd) {
      mp.seed = common.seed;
      return run_generate(mp, common);
    }
    if (*corr_cmd) return run_correlate(co, common);
    if (*theory_cmd) return run_theory(to, common);
    if (*tune_cmd) return run_tune(uo, common);
  } catch (const hs::IoError& e) {
    std::cerr << "hsembed: " << e.what() << '\n';
    return kUsageFailure;
  } catch (const hs::ParseError& e) {
    std::cerr << "hsembed: " << e.what() << '\n';
    return kUsageFailure;
  } catch (const hs::InvalidArgument& e) {
    std::cerr << "hsembed: " << e.what() << '\n';
    return kUsageFailure;
  } catch (const std::exception& e) {
    std::cerr << "hsembed: " << e.what() << '\n';
    return kComputeFailure;
  }
  return kUsageFailure;
}
