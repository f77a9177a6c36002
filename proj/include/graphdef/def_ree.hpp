#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphdef/core.hpp"
#include "graphdef/decision.hpp"
#include "graphdef/expr.hpp"

namespace graphdef {

/// How a generator was first derived. Operand indices refer to earlier
/// generators.
struct ReeProvenance {
  enum class Kind : std::uint8_t { Eps, Letter, Compose, Eq, Neq };
  Kind kind = Kind::Eps;
  LetterId letter = 0;     // Letter
  std::uint32_t left = 0;  // Compose, Eq, Neq
  std::uint32_t right = 0; // Compose
};

struct LevelOptions {
  /// Maximum number of generators kept.
  std::size_t max_relations = std::size_t{1} << 20;
  /// Stop at the first level that adds nothing.
  bool stop_at_fixpoint = true;
};

/// The level hierarchy in generator form. Level i consists of all nonempty
/// unions of generators of level <= i; union and restriction distribute, so
/// only compositions and restrictions of generators are ever formed. A
/// candidate that is already a nonempty union of known generators is dropped.
class LevelSet {
 public:
  LevelSet() = default;

  std::size_t node_count() const { return n_; }
  const std::vector<BitMatrix>& generators() const { return generators_; }
  const std::vector<ReeProvenance>& provenance() const { return provenance_; }
  const std::vector<unsigned>& levels() const { return levels_; }
  /// Last level computed.
  unsigned last_level() const { return last_level_; }
  /// True when the last computed level added nothing.
  bool stabilized() const { return stabilized_; }

  bool contains(const BitMatrix& s) const { return height(s).has_value(); }
  /// First level containing s.
  std::optional<unsigned> height(const BitMatrix& s) const;
  /// Generators whose union is s (greedy cover), or nullopt when s is not
  /// in the set.
  std::optional<std::vector<std::uint32_t>> cover(const BitMatrix& s) const;
  /// REE whose relation is the given generator.
  ReeExpr expression(std::uint32_t generator) const;

  /// Every relation of level <= `level`, sorted by (count, bits); throws
  /// BudgetExceeded beyond `limit` relations.
  std::vector<BitMatrix> materialize(unsigned level, std::size_t limit = 1U << 16) const;

 private:
  friend LevelSet level_closure(const DataGraph& g, unsigned max_level, const LevelOptions& options);

  std::size_t n_ = 0;
  std::vector<std::string> letters_;
  std::vector<BitMatrix> generators_;
  std::vector<ReeProvenance> provenance_;
  std::vector<unsigned> levels_;
  unsigned last_level_ = 0;
  bool stabilized_ = false;
};

/// Throws BudgetExceeded when the generator count passes the budget.
LevelSet level_closure(const DataGraph& g, unsigned max_level, const LevelOptions& options = {});

struct ReeReport {
  Decision decision = Decision::NotDefinable;
  NodeRelation relation;
  std::optional<unsigned> level;  // first level containing the relation
  LevelSet levels;
  std::string message;
};

/// Membership in level n^2.
ReeReport decide_ree(const DataGraph& g, const NodeRelation& s, const LevelOptions& options = {});

/// Throws Error unless definable, or if the result does not evaluate to
/// exactly the relation.
ReeExpr synthesize_ree(const DataGraph& g, const ReeReport& report);

}  // namespace graphdef
