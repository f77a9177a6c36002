#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphdef/core.hpp"
#include "graphdef/decision.hpp"
#include "graphdef/eval.hpp"

namespace graphdef {

/// Total map from nodes to nodes of one graph; entry i is the image of node i.
using GraphHomomorphism = std::vector<NodeId>;

struct ReachablePairs {
  NodeRelation eq;   // reachable by >= 1 edge, equal data
  NodeRelation neq;  // reachable by >= 1 edge, different data
};

ReachablePairs reachable_pairs(const DataGraph& g);

/// Edges are preserved and data (in)equality is preserved on reachable pairs.
bool is_homomorphism(const DataGraph& g, const GraphHomomorphism& h);

struct HomSearchOptions {
  /// Maximum number of partial assignments tried.
  std::size_t max_steps = std::size_t{1} << 26;
};

/// All homomorphisms in lexicographic order, by backtracking with pruning.
/// Throws BudgetExceeded when the step budget runs out.
std::vector<GraphHomomorphism> enumerate_homomorphisms(const DataGraph& g, const HomSearchOptions& options = {});

struct UcqCounterexample {
  GraphHomomorphism hom;
  Tuple tuple;
  Tuple image;
};

struct UcqReport {
  Decision decision = Decision::NotDefinable;
  NodeRelation relation;
  /// First homomorphism (lexicographic) moving a tuple out of the relation.
  std::optional<UcqCounterexample> counterexample;
  std::size_t steps = 0;
  std::string message;
};

UcqReport decide_ucrdpq(const DataGraph& g, const NodeRelation& s, const HomSearchOptions& options = {});

/// The union over tuples of S of Ans(tuple vars) := phi_G. Throws Error
/// unless S is definable or if the result does not evaluate to exactly S.
Ucrdpq synthesize_ucrdpq(const DataGraph& g, const NodeRelation& s, const HomSearchOptions& options = {});

}  // namespace graphdef
