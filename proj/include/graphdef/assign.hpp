#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "graphdef/core.hpp"
#include "graphdef/expr.hpp"

namespace graphdef {

/// Register content meaning "empty".
inline constexpr ValueId kEmptyRegister = std::numeric_limits<ValueId>::max();

/// A state of the k-assignment graph: a node and k register contents.
struct AssignState {
  NodeId node = 0;
  std::vector<ValueId> registers;  // graph value ids or kEmptyRegister

  friend bool operator==(const AssignState&, const AssignState&) = default;
  friend auto operator<=>(const AssignState&, const AssignState&) = default;
};

/// Transition label "store the registers in store_mask, read letter, then
/// require register i to equal the new value iff bit i-1 of type_mask".
/// The condition is a complete atomic type over all k registers.
struct BlockLabel {
  std::uint32_t store_mask = 0;
  LetterId letter = 0;
  std::uint32_t type_mask = 0;

  RemBlock to_block(const DataGraph& g, unsigned k) const;

  friend bool operator==(const BlockLabel&, const BlockLabel&) = default;
};

using StateId = std::uint32_t;

/// Slot i holds the states reached from (v_i, empty^k); each slot sorted.
struct SubsetTuple {
  std::vector<std::vector<StateId>> slots;

  bool all_empty() const;
  /// Flat encoding (size, states..., size, states...) used as a hash key.
  std::vector<std::uint32_t> key() const;

  friend bool operator==(const SubsetTuple&, const SubsetTuple&) = default;
};

/// The k-assignment graph of a data graph, with states numbered densely as
/// node * (delta+1)^k + register digits (digit delta stands for empty).
class AssignmentGraph {
 public:
  /// Throws BudgetExceeded when the state space does not fit 32-bit ids.
  AssignmentGraph(const DataGraph& g, unsigned k);

  const DataGraph& graph() const { return *g_; }
  unsigned registers() const { return k_; }
  std::size_t state_count() const { return g_->node_count() * assignments_; }
  std::size_t assignment_count() const { return assignments_; }

  StateId encode(const AssignState& s) const;
  AssignState decode(StateId id) const;
  NodeId node_of(StateId id) const { return static_cast<NodeId>(id / assignments_); }

  /// All |alphabet| * 2^k * 2^k labels, letter-major, then store mask, then
  /// type mask.
  std::vector<BlockLabel> labels() const;

  std::vector<StateId> successors(StateId s, const BlockLabel& label) const;
  SubsetTuple initial_tuple() const;
  SubsetTuple step(const SubsetTuple& t, const BlockLabel& label) const;
  /// Successor tuples for one (letter, store mask) under every atomic type;
  /// out[type_mask] receives the tuple for that type.
  void step_all_types(const SubsetTuple& t, LetterId letter, std::uint32_t store_mask,
                      std::vector<SubsetTuple>& out) const;

  /// States reachable from `s` along a run labelled by the blocks of `e`
  /// (arbitrary conditions allowed).
  std::vector<AssignState> run_reach(const AssignState& s, const BasicRem& e) const;

  /// Edge list of the transition system, for inspection.
  std::string dump() const;

 private:
  std::uint32_t digit(std::uint32_t assignment, unsigned reg) const {
    return (assignment / pow_[reg]) % base_;
  }
  std::uint32_t store(std::uint32_t assignment, std::uint32_t mask, ValueId d) const;
  std::uint32_t type_of(std::uint32_t assignment, ValueId d) const;

  const DataGraph* g_;
  unsigned k_;
  std::uint32_t base_;
  std::uint32_t assignments_;
  std::vector<std::uint32_t> pow_;
};

// Free-function forms.
std::vector<AssignState> successors(const DataGraph& g, unsigned k, const AssignState& s,
                                    const BlockLabel& label);
SubsetTuple tuple_step(const DataGraph& g, unsigned k, const SubsetTuple& t, const BlockLabel& label);
std::vector<BlockLabel> labels(const DataGraph& g, unsigned k);
std::vector<AssignState> run_reach(const DataGraph& g, unsigned k, const AssignState& s,
                                   const BasicRem& e);

}  // namespace graphdef
