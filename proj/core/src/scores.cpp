#include "hiddenspace/scores.hpp"

#include <ostream>

#include "hiddenspace/error.hpp"
#include "hiddenspace/output.hpp"

namespace hs {

PairSet::PairSet(std::vector<NodePair> pairs) : pairs_(std::move(pairs)) {
  index_.reserve(pairs_.size());
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    auto& p = pairs_[i];
    p = NodePair::make(p.u, p.v);
    if (p.u == p.v) throw InvalidArgument("PairSet: pair with identical endpoints");
    if (!index_.emplace(p.key(), i).second) throw InvalidArgument("PairSet: duplicate pair");
  }
}

std::optional<std::size_t> PairSet::find(NodePair p) const {
  auto it = index_.find(NodePair::make(p.u, p.v).key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PairSet::index_of(NodePair p) const {
  if (auto i = find(p)) return *i;
  throw InvalidArgument("pair (" + std::to_string(p.u) + "," + std::to_string(p.v) +
                        ") is not in the candidate set");
}

void write_score_csv(std::ostream& out, const ScoreTable& table, const NodeIdMap& labels,
                     bool header) {
  if (header) out << "label_i,label_j,method,score\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& p = (*table.pairs)[i];
    out << labels.label(p.u) << ',' << labels.label(p.v) << ',' << table.method << ','
        << format_double(table.scores[i]) << '\n';
  }
}

}  // namespace hs
