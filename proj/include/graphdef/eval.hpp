#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "graphdef/core.hpp"
#include "graphdef/expr.hpp"

namespace graphdef {

/// Automaton over data paths. Position operations act on the current data
/// value without consuming a letter; letter transitions move along an edge.
struct RegisterAutomaton {
  using State = std::uint32_t;

  struct PositionOp {
    enum class Kind : std::uint8_t { Silent, Store, Test };
    Kind kind = Kind::Silent;
    std::vector<unsigned> registers;  // Store
    Condition condition;              // Test
  };
  struct OpTransition {
    State from;
    PositionOp op;
    State to;
  };
  struct LetterTransition {
    State from;
    std::string letter;
    State to;
  };

  std::size_t state_count = 0;
  State initial = 0;
  std::vector<State> finals;
  unsigned registers = 0;
  std::vector<OpTransition> op_transitions;
  std::vector<LetterTransition> letter_transitions;
};

RegisterAutomaton compile_rem(const RemExpr& e);

/// Pairs (u,v) joined by a data path in L(e). Exact; the configuration space
/// (state, node, assignment) is finite.
NodeRelation eval_rem_query(const DataGraph& g, const RemExpr& e);
NodeRelation eval_rem_query(const DataGraph& g, const RegisterAutomaton& a);
/// Same, restricted to paths of at most `max_letters` letters.
NodeRelation eval_rem_bounded(const DataGraph& g, const RemExpr& e, std::size_t max_letters);

/// Evaluated compositionally with the relation operators of core.
NodeRelation eval_ree_query(const DataGraph& g, const ReeExpr& e);
BitMatrix ree_relation(const DataGraph& g, const ReeExpr& e);

/// Plain regular expression (no stores, no tests); throws Error otherwise.
NodeRelation eval_rpq(const DataGraph& g, const RemExpr& e);

using PathExpr = std::variant<RemExpr, ReeExpr>;

struct PathAtom {
  std::string source;
  PathExpr expr;
  std::string target;
};

/// Ans(answer) := conjunction of source -[expr]-> target.
struct Crdpq {
  std::vector<std::string> answer;
  std::vector<PathAtom> atoms;

  std::size_t arity() const { return answer.size(); }
  /// Throws Error unless there is at least one atom, all atoms use the same
  /// expression language and every answer variable occurs in an atom.
  void validate() const;
  /// "ans(x1,y1) := x1 -[a]-> y1 & y1 -[(a_=)]-> x1"
  std::string to_string() const;
};

/// Finite union of CRDPQs of one arity; the empty union defines nothing.
struct Ucrdpq {
  std::size_t arity = 2;
  std::vector<Crdpq> members;

  void validate() const;
  /// Members separated by a line holding only "|||".
  std::string to_string() const;
};

/// Atom expressions are read as REE when all of them parse as REE, else as
/// REM. Throws InputError with a byte offset into `text`.
Crdpq parse_crdpq(std::string_view text);
/// `empty_arity` is the arity given to a text with no members.
Ucrdpq parse_ucrdpq(std::string_view text, std::size_t empty_arity = 2);

/// Each atom relation is computed once (concurrently when jobs > 1), then
/// valuations are enumerated by a backtracking join.
NodeRelation eval_crdpq(const DataGraph& g, const Crdpq& q, unsigned jobs = 1);
NodeRelation eval_ucrdpq(const DataGraph& g, const Ucrdpq& q, unsigned jobs = 1);

}  // namespace graphdef
