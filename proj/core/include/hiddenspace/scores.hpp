#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hiddenspace/graph.hpp"

namespace hs {

/// Immutable list of candidate pairs with O(1) lookup; shared between score tables.
class PairSet {
 public:
  explicit PairSet(std::vector<NodePair> pairs);

  std::size_t size() const noexcept { return pairs_.size(); }
  const NodePair& operator[](std::size_t i) const { return pairs_[i]; }
  const std::vector<NodePair>& pairs() const noexcept { return pairs_; }
  std::optional<std::size_t> find(NodePair p) const;
  /// Throws InvalidArgument when the pair is not a member.
  std::size_t index_of(NodePair p) const;

  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }

 private:
  std::vector<NodePair> pairs_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

using PairSetPtr = std::shared_ptr<const PairSet>;

inline PairSetPtr make_pair_set(std::vector<NodePair> pairs) {
  return std::make_shared<const PairSet>(std::move(pairs));
}

/// Method-tagged similarity scores over a PairSet. Scores are finite except
/// for -infinity, which marks pairs in different components.
struct ScoreTable {
  std::string method;
  PairSetPtr pairs;
  std::vector<double> scores;

  std::size_t size() const noexcept { return scores.size(); }
  double score(NodePair p) const { return scores[pairs->index_of(p)]; }
};

/// CSV rows label_i,label_j,method,score.
void write_score_csv(std::ostream& out, const ScoreTable& table, const NodeIdMap& labels,
                     bool header = true);

}  // namespace hs
