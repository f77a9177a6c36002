#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphdef/core.hpp"
#include "graphdef/decision.hpp"
#include "graphdef/expr.hpp"

namespace graphdef {

struct RemSearchOptions {
  /// Maximum number of distinct subset tuples visited.
  std::size_t max_tuples = std::size_t{1} << 22;
};

struct PairWitness {
  NodeId source = 0;
  NodeId target = 0;
  BasicRem witness;
};

struct WitnessReport {
  Decision decision = Decision::NotDefinable;
  unsigned registers = 0;
  NodeRelation relation;
  /// One per pair of `relation`, in pair order, when definable.
  std::vector<PairWitness> witnesses;
  /// First pair left without a witness, when not definable.
  std::optional<std::pair<NodeId, NodeId>> failing_pair;
  /// For S empty and k = 0: a word reaching the all-empty tuple.
  std::optional<BasicRem> empty_witness;
  std::size_t tuples_visited = 0;
  std::string message;  // set when resource-exhausted
};

/// Breadth-first search of the subset-tuple space of the k-assignment graph.
WitnessReport find_witnesses(const DataGraph& g, const NodeRelation& s, unsigned k,
                             const RemSearchOptions& options = {});
/// k = 0 decides RPQ definability.
WitnessReport decide_k_rem(const DataGraph& g, const NodeRelation& s, unsigned k,
                           const RemSearchOptions& options = {});
/// k = number of distinct data values of g.
WitnessReport decide_rem(const DataGraph& g, const NodeRelation& s, const RemSearchOptions& options = {});

/// Union of the witnesses; throws Error unless the report is definable or if
/// the result does not evaluate to exactly the relation.
RemExpr synthesize_rem(const DataGraph& g, const WitnessReport& report);

}  // namespace graphdef
