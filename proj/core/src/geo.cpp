#include "hiddenspace/geo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hiddenspace/error.hpp"
#include "hiddenspace/rng.hpp"

namespace hs {

double CoordinateSet::distance(std::size_t i, std::size_t j) const {
  const auto a = positions.row(static_cast<Eigen::Index>(i));
  const auto b = positions.row(static_cast<Eigen::Index>(j));
  if (metric == Metric::euclidean) return (a - b).norm();
  constexpr double radius_km = 6371.0;
  constexpr double deg = 3.14159265358979323846 / 180.0;
  const double lat1 = a[0] * deg, lat2 = b[0] * deg;
  const double dlat = lat2 - lat1, dlon = (b[1] - a[1]) * deg;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2 * radius_km * std::asin(std::min(1.0, std::sqrt(h)));
}

CoordinateSet LabeledCoordinates::align(const NodeIdMap& nodes, Metric metric) const {
  std::unordered_map<std::string, std::size_t> row;
  for (std::size_t i = 0; i < labels.size(); ++i) row.emplace(labels[i], i);
  CoordinateSet out;
  out.metric = metric;
  out.positions.resize(static_cast<Eigen::Index>(nodes.size()), positions.cols());
  for (NodeId id = 0; id < nodes.size(); ++id) {
    auto it = row.find(nodes.label(id));
    if (it == row.end()) throw InvalidArgument("no coordinates for node '" + nodes.label(id) + "'");
    out.positions.row(id) = positions.row(static_cast<Eigen::Index>(it->second));
  }
  if (metric == Metric::haversine && positions.cols() != 2)
    throw InvalidArgument("haversine metric needs (lat, lon) coordinates");
  return out;
}

namespace {

bool to_double(std::string_view s, double& v) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  const auto last = s.find_last_not_of(" \t\r");
  return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
}

}  // namespace

LabeledCoordinates parse_coordinates(std::istream& in) {
  LabeledCoordinates out;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool first_data = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cells = split_csv(t);
    if (cells.size() < 2) throw ParseError("expected node_label and at least one coordinate", line_no);
    std::vector<double> values(cells.size() - 1);
    bool numeric = true;
    for (std::size_t c = 1; c < cells.size(); ++c) numeric = numeric && to_double(cells[c], values[c - 1]);
    if (!numeric) {
      if (first_data) {
        first_data = false;  // header row
        continue;
      }
      throw ParseError("non-numeric coordinate", line_no);
    }
    first_data = false;
    if (width == 0) width = values.size();
    if (values.size() != width) throw ParseError("inconsistent coordinate dimension", line_no);
    out.labels.push_back(trim(cells[0]));
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("coordinate file has no rows");
  out.positions.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < width; ++c)
      out.positions(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return out;
}

LabeledCoordinates read_coordinates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open coordinate file '" + path + "'");
  return parse_coordinates(in);
}

void write_coordinates(std::ostream& out, const CoordinateSet& coords, const NodeIdMap& labels,
                       const Metadata& meta) {
  meta.write_comment_header(out);
  out << "node_label";
  const char* axis[] = {"x", "y", "z"};
  for (std::size_t c = 0; c < coords.dim(); ++c)
    out << ',' << (c < 3 ? std::string(axis[c]) : "x" + std::to_string(c + 1));
  out << '\n';
  for (Eigen::Index i = 0; i < coords.positions.rows(); ++i) {
    out << labels.label(static_cast<NodeId>(i));
    for (Eigen::Index c = 0; c < coords.positions.cols(); ++c) out << ',' << format_double(coords.positions(i, c));
    out << '\n';
  }
}

// ---------------------------------------------------------------------------

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("spearman: length mismatch");
  if (x.size() < 2) throw InvalidArgument("spearman: need at least two observations");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return NAN;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman_hidden_vs_real(const Embedding& e, const CoordinateSet& coords, std::size_t pair_budget,
                               std::uint64_t seed) {
  const auto n = e.node_count();
  if (coords.size() != n)
    throw InvalidArgument("spearman: coordinate count " + std::to_string(coords.size()) +
                          " does not match the " + std::to_string(n) + " embedded nodes");
  std::vector<double> hidden, real;
  const std::size_t all = n * (n - 1) / 2;
  if (all <= pair_budget) {
    hidden.reserve(all);
    real.reserve(all);
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j) {
        hidden.push_back(hs_distance(e, i, j));
        real.push_back(coords.distance(i, j));
      }
  } else {
    Rng rng(seed);
    hidden.reserve(pair_budget);
    real.reserve(pair_budget);
    while (hidden.size() < pair_budget) {
      const auto i = static_cast<NodeId>(rng.index(n));
      const auto j = static_cast<NodeId>(rng.index(n));
      if (i == j) continue;
      hidden.push_back(hs_distance(e, i, j));
      real.push_back(coords.distance(i, j));
    }
  }
  return spearman(hidden, real);
}

GridScan scan_grid(const Graph& g, const CoordinateSet& coords, const std::vector<double>& alpha_grid,
                   const std::vector<std::size_t>& dim_grid, const EmbeddingConfig& base,
                   std::size_t pair_budget, std::uint64_t seed) {
  if (alpha_grid.empty() || dim_grid.empty()) throw InvalidArgument("scan_grid: empty grid");
  GridScan scan;
  scan.alphas = alpha_grid;
  scan.dims = dim_grid;
  const auto na = alpha_grid.size(), nd = dim_grid.size();
  scan.values.assign(na, std::vector<double>(nd, NAN));
  scan.errors.assign(na, std::vector<std::optional<std::string>>(nd));

  const auto n = g.node_count();
  std::size_t max_dim = 0;
  for (auto d : dim_grid)
    if (d >= 1 && d + 1 <= n) max_dim = std::max(max_dim, d);

  for (std::size_t a = 0; a < na; ++a) {
    std::optional<Embedding> full;
    std::string failure;
    if (max_dim > 0) {
      try {
        EmbeddingConfig cfg = base;
        cfg.alpha = alpha_grid[a];
        cfg.dim = max_dim;
        full = embed(g, cfg);
      } catch (const std::exception& ex) {
        failure = ex.what();
      }
    }
    for (std::size_t k = 0; k < nd; ++k) {
      const auto d = dim_grid[k];
      if (d < 1 || d + 1 > n) {
        scan.errors[a][k] = "dimension " + std::to_string(d) + " out of range for " + std::to_string(n) + " nodes";
        continue;
      }
      if (!full) {
        scan.errors[a][k] = failure;
        continue;
      }
      // Coordinates for a smaller dimension are the leading columns of the full embedding.
      Embedding cell = *full;
      cell.coords = full->coords.leftCols(static_cast<Eigen::Index>(d));
      cell.config.dim = d;
      try {
        const double v = spearman_hidden_vs_real(cell, coords, pair_budget, seed);
        scan.values[a][k] = v;
        if (std::isnan(scan.best_value) || v > scan.best_value) {
          scan.best_value = v;
          scan.best_alpha = alpha_grid[a];
          scan.best_dim = d;
        }
      } catch (const std::exception& ex) {
        scan.errors[a][k] = ex.what();
      }
    }
  }
  return scan;
}

void write_grid_csv(std::ostream& out, const GridScan& scan, const Metadata& meta) {
  meta.write_comment_header(out);
  out << "# best_alpha=" << format_double(scan.best_alpha) << '\n';
  out << "# best_dim=" << scan.best_dim << '\n';
  out << "# best_spearman=" << format_double(scan.best_value) << '\n';
  out << "alpha";
  for (auto d : scan.dims) out << ",d=" << d;
  out << '\n';
  for (std::size_t a = 0; a < scan.alphas.size(); ++a) {
    out << format_double(scan.alphas[a]);
    for (double v : scan.values[a]) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace hs
