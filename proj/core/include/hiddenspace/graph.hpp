#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hs {

using NodeId = std::uint32_t;

/// Unordered node pair stored with u < v.
struct NodePair {
  NodeId u = 0;
  NodeId v = 0;

  static NodePair make(NodeId a, NodeId b) noexcept {
    return a < b ? NodePair{a, b} : NodePair{b, a};
  }
  std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// Immutable simple undirected graph on contiguous ids 0..n-1 (CSR adjacency).
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Self-loops and duplicates are dropped,
  /// direction is ignored. Every id must be < node_count.
  static Graph from_edges(std::size_t node_count, std::span<const NodePair> edges);
  static Graph from_edges(std::size_t node_count,
                          std::initializer_list<std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  bool has_edge(NodeId u, NodeId v) const;

  /// Edges with u < v in lexicographic order.
  const std::vector<NodePair>& edges() const noexcept { return edges_; }

  bool is_complete() const noexcept {
    const auto n = node_count();
    return edges_.size() == n * (n - (n > 0 ? 1 : 0)) / 2;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<NodePair> edges_;
};

/// Bijection between dataset labels and compact ids.
class NodeIdMap {
 public:
  NodeIdMap() = default;
  explicit NodeIdMap(std::vector<std::string> labels);

  /// Identity labels "0".."n-1".
  static NodeIdMap identity(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(NodeId id) const { return labels_.at(id); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Throws InvalidArgument when the label is unknown.
  NodeId id(std::string_view label) const;
  bool contains(std::string_view label) const;

  /// Map for the subset `ids` (new id i -> old label of ids[i]).
  NodeIdMap restrict(std::span<const NodeId> ids) const;

  /// Two-column CSV: original_label,compact_id
  void write_csv(std::ostream& out) const;

  friend bool operator==(const NodeIdMap& a, const NodeIdMap& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

struct ParseOptions {
  std::string comment_prefixes = "%#";
  /// Empty means any run of whitespace, ',' or ';'.
  std::string delimiters;
  /// Reject labels that are not decimal integers.
  bool numeric_labels = false;
};

struct LabeledGraph {
  Graph graph;
  NodeIdMap labels;
};

/// Parses an edge list; only the first two columns of each data line are used.
/// Labels are compacted in ascending order (numeric when every label is an
/// integer, lexicographic otherwise).
LabeledGraph parse_edge_list(std::istream& in, const ParseOptions& options = {});
LabeledGraph parse_edge_list(std::string_view text, const ParseOptions& options = {});
LabeledGraph read_edge_list(const std::string& path, const ParseOptions& options = {});

/// One "label_u label_v" line per edge, preceded by optional '%' comment lines.
void write_edge_list(std::ostream& out, const Graph& g, const NodeIdMap& labels,
                     std::span<const std::string> comments = {});

/// Induced subgraph together with the parent id of every new node.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> parent_ids;
};

/// Per-node component index; components are numbered by smallest contained id.
std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count = nullptr);

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Largest connected component; equal sizes resolve to the component holding
/// the smallest id (ids are label-ordered, so this is the smallest label).
Subgraph giant_component(const Graph& g);

/// `count` independent uniform non-adjacent pairs by rejection sampling.
std::vector<NodePair> sample_non_edges(const Graph& g, std::size_t count, std::uint64_t seed);

/// Every non-adjacent pair, lexicographically ordered.
std::vector<NodePair> all_non_edges(const Graph& g);

}  // namespace hs
