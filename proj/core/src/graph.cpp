#include "hiddenspace/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "hiddenspace/error.hpp"
#include "hiddenspace/rng.hpp"

namespace hs {

Graph Graph::from_edges(std::size_t node_count, std::span<const NodePair> edges) {
  std::vector<NodePair> clean;
  clean.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count)
      throw InvalidArgument("Graph::from_edges: node id out of range");
    if (e.u == e.v) continue;
    clean.push_back(NodePair::make(e.u, e.v));
  }
  std::sort(clean.begin(), clean.end());
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (const auto& e : clean) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adjacency_.resize(2 * clean.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted, so each neighbor list fills in ascending order.
  for (const auto& e : clean) g.adjacency_[cursor[e.u]++] = e.v;
  for (const auto& e : clean) g.adjacency_[cursor[e.v]++] = e.u;
  for (std::size_t u = 0; u < node_count; ++u)
    std::sort(g.adjacency_.begin() + g.offsets_[u], g.adjacency_.begin() + g.offsets_[u + 1]);
  g.edges_ = std::move(clean);
  return g;
}

Graph Graph::from_edges(std::size_t node_count,
                        std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  std::vector<NodePair> list;
  list.reserve(edges.size());
  for (const auto& [a, b] : edges) list.push_back({a, b});
  return from_edges(node_count, list);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

// ---------------------------------------------------------------------------

NodeIdMap::NodeIdMap(std::vector<std::string> labels) : labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (NodeId i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second)
      throw InvalidArgument("NodeIdMap: duplicate label '" + labels_[i] + "'");
  }
}

NodeIdMap NodeIdMap::identity(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return NodeIdMap(std::move(labels));
}

NodeId NodeIdMap::id(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) throw InvalidArgument("unknown node label '" + std::string(label) + "'");
  return it->second;
}

bool NodeIdMap::contains(std::string_view label) const {
  return index_.count(std::string(label)) != 0;
}

NodeIdMap NodeIdMap::restrict(std::span<const NodeId> ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(labels_.at(id));
  return NodeIdMap(std::move(out));
}

void NodeIdMap::write_csv(std::ostream& out) const {
  out << "original_label,compact_id\n";
  for (NodeId i = 0; i < labels_.size(); ++i) out << labels_[i] << ',' << i << '\n';
}

// ---------------------------------------------------------------------------

namespace {

bool parse_integer(std::string_view s, long long& value) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split_fields(std::string_view line, const std::string& delimiters) {
  std::vector<std::string_view> fields;
  auto is_delim = [&](char c) {
    if (delimiters.empty()) return c == ' ' || c == '\t' || c == ',' || c == ';' || c == '\r';
    return delimiters.find(c) != std::string::npos || c == '\r';
  };
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_delim(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_delim(line[j])) ++j;
    fields.push_back(line.substr(i, j - i));
    if (fields.size() == 2) break;
    i = j;
  }
  return fields;
}

bool label_less(const std::string& a, const std::string& b, bool numeric) {
  if (numeric) {
    long long x = 0, y = 0;
    parse_integer(a, x);
    parse_integer(b, y);
    return x < y;
  }
  return a < b;
}

}  // namespace

LabeledGraph parse_edge_list(std::istream& in, const ParseOptions& options) {
  std::vector<std::pair<std::string, std::string>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    view.remove_prefix(first);
    if (options.comment_prefixes.find(view.front()) != std::string::npos) continue;
    const auto fields = split_fields(view, options.delimiters);
    if (fields.size() < 2) throw ParseError("expected two node labels", line_no);
    for (auto f : fields) {
      long long ignored = 0;
      if (options.numeric_labels && !parse_integer(f, ignored))
        throw ParseError("non-numeric node label '" + std::string(f) + "'", line_no);
    }
    raw.emplace_back(std::string(fields[0]), std::string(fields[1]));
  }
  if (raw.empty()) throw ParseError("edge list contains no edges");

  std::vector<std::string> labels;
  {
    std::unordered_set<std::string> seen;
    for (const auto& [a, b] : raw) {
      if (seen.insert(a).second) labels.push_back(a);
      if (seen.insert(b).second) labels.push_back(b);
    }
  }
  const bool numeric = std::all_of(labels.begin(), labels.end(), [](const std::string& s) {
    long long v = 0;
    return parse_integer(s, v);
  });
  std::sort(labels.begin(), labels.end(),
            [numeric](const std::string& a, const std::string& b) { return label_less(a, b, numeric); });

  NodeIdMap map(std::move(labels));
  std::vector<NodePair> edges;
  edges.reserve(raw.size());
  for (const auto& [a, b] : raw) edges.push_back({map.id(a), map.id(b)});
  Graph g = Graph::from_edges(map.size(), edges);

  // Labels that only occur on self-loops end up isolated; drop them.
  std::vector<NodeId> keep;
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (g.degree(u) > 0) keep.push_back(u);
  if (keep.empty()) throw ParseError("edge list contains no edges");
  if (keep.size() != g.node_count()) {
    auto sub = induced_subgraph(g, keep);
    return {std::move(sub.graph), map.restrict(sub.parent_ids)};
  }
  return {std::move(g), std::move(map)};
}

LabeledGraph parse_edge_list(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, options);
}

LabeledGraph read_edge_list(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list '" + path + "'");
  return parse_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g, const NodeIdMap& labels,
                     std::span<const std::string> comments) {
  for (const auto& c : comments) out << "% " << c << '\n';
  for (const auto& e : g.edges()) out << labels.label(e.u) << ' ' << labels.label(e.v) << '\n';
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count) {
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  const auto n = g.node_count();
  std::vector<std::uint32_t> comp(n, unset);
  std::uint32_t next = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (comp[v] == unset) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  constexpr auto absent = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(g.node_count(), absent);
  std::vector<NodeId> parent(nodes.begin(), nodes.end());
  std::sort(parent.begin(), parent.end());
  parent.erase(std::unique(parent.begin(), parent.end()), parent.end());
  for (NodeId i = 0; i < parent.size(); ++i) remap.at(parent[i]) = i;

  std::vector<NodePair> edges;
  for (const auto& e : g.edges())
    if (remap[e.u] != absent && remap[e.v] != absent) edges.push_back({remap[e.u], remap[e.v]});
  return {Graph::from_edges(parent.size(), edges), std::move(parent)};
}

Subgraph giant_component(const Graph& g) {
  std::size_t count = 0;
  const auto comp = connected_components(g, &count);
  if (count <= 1) {
    std::vector<NodeId> ids(g.node_count());
    std::iota(ids.begin(), ids.end(), 0);
    return {g, std::move(ids)};
  }
  std::vector<std::size_t> sizes(count, 0);
  for (auto c : comp) ++sizes[c];
  // Component indices follow the smallest contained id, so the first maximum wins ties.
  const auto best = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> nodes;
  nodes.reserve(sizes[best]);
  for (NodeId u = 0; u < comp.size(); ++u)
    if (comp[u] == best) nodes.push_back(u);
  return induced_subgraph(g, nodes);
}

std::vector<NodePair> sample_non_edges(const Graph& g, std::size_t count, std::uint64_t seed) {
  const auto n = g.node_count();
  if (n < 2 || g.is_complete()) throw InvalidArgument("sample_non_edges: no non-edges");
  Rng rng(seed);
  std::vector<NodePair> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto a = static_cast<NodeId>(rng.index(n));
    const auto b = static_cast<NodeId>(rng.index(n));
    if (a == b || g.has_edge(a, b)) continue;
    out.push_back(NodePair::make(a, b));
  }
  return out;
}

std::vector<NodePair> all_non_edges(const Graph& g) {
  const auto n = g.node_count();
  std::vector<NodePair> out;
  if (n < 2) return out;
  out.reserve(n * (n - 1) / 2 - g.edge_count());
  for (NodeId u = 0; u + 1 < n; ++u) {
    auto nb = g.neighbors(u);
    auto it = std::upper_bound(nb.begin(), nb.end(), u);
    for (NodeId v = u + 1; v < n; ++v) {
      if (it != nb.end() && *it == v) {
        ++it;
        continue;
      }
      out.push_back({u, v});
    }
  }
  return out;
}

}  // namespace hs
