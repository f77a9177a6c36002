#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graphdef/core.hpp"
#include "graphdef/error.hpp"

namespace graphdef {

/// Boolean condition over register comparisons. Registers are 1-based.
struct Condition {
  enum class Kind : std::uint8_t { True, RegEq, RegNeq, And, Or, Not };

  Kind kind = Kind::True;
  unsigned reg = 0;             // RegEq, RegNeq
  std::vector<Condition> args;  // And/Or: two, Not: one

  static Condition top() { return {}; }
  static Condition reg_eq(unsigned r) { return {Kind::RegEq, r, {}}; }
  static Condition reg_neq(unsigned r) { return {Kind::RegNeq, r, {}}; }
  static Condition conj(Condition l, Condition r) { return {Kind::And, 0, {std::move(l), std::move(r)}}; }
  static Condition disj(Condition l, Condition r) { return {Kind::Or, 0, {std::move(l), std::move(r)}}; }
  static Condition negate(Condition c) { return {Kind::Not, 0, {std::move(c)}}; }

  unsigned max_register() const;

  friend bool operator==(const Condition&, const Condition&) = default;
};

/// Evaluates `c` where `reg_equals(i)` says whether register i (1-based)
/// holds the current data value. An empty register never equals a value.
template <class RegEquals>
bool evaluate(const Condition& c, RegEquals&& reg_equals) {
  switch (c.kind) {
    case Condition::Kind::True: return true;
    case Condition::Kind::RegEq: return reg_equals(c.reg);
    case Condition::Kind::RegNeq: return !reg_equals(c.reg);
    case Condition::Kind::And: return evaluate(c.args[0], reg_equals) && evaluate(c.args[1], reg_equals);
    case Condition::Kind::Or: return evaluate(c.args[0], reg_equals) || evaluate(c.args[1], reg_equals);
    case Condition::Kind::Not: return !evaluate(c.args[0], reg_equals);
  }
  return false;
}

/// k register slots over data-value tokens; nullopt is the empty register.
using RegisterAssignment = std::vector<std::optional<std::string>>;

RegisterAssignment empty_assignment(unsigned k);

/// Satisfaction of `c` by data value `d` under `tau`. Throws Error when `c`
/// mentions a register beyond tau.size().
bool cond_eval(const Condition& c, const std::string& d, const RegisterAssignment& tau);

/// Regular expression with memory.
struct RemExpr {
  enum class Kind : std::uint8_t { Eps, Letter, Union, Concat, Plus, Test, Store };

  Kind kind = Kind::Eps;
  std::string letter;               // Letter
  std::vector<unsigned> registers;  // Store: sorted, distinct, nonempty
  Condition condition;              // Test
  std::vector<RemExpr> args;

  static RemExpr eps() { return {}; }
  static RemExpr sym(std::string a) { return {Kind::Letter, std::move(a), {}, {}, {}}; }
  static RemExpr either(RemExpr l, RemExpr r) { return {Kind::Union, {}, {}, {}, {std::move(l), std::move(r)}}; }
  static RemExpr concat(RemExpr l, RemExpr r) { return {Kind::Concat, {}, {}, {}, {std::move(l), std::move(r)}}; }
  static RemExpr plus(RemExpr e) { return {Kind::Plus, {}, {}, {}, {std::move(e)}}; }
  static RemExpr test(RemExpr e, Condition c) { return {Kind::Test, {}, {}, std::move(c), {std::move(e)}}; }
  static RemExpr store(std::vector<unsigned> regs, RemExpr e);

  friend bool operator==(const RemExpr&, const RemExpr&) = default;
};

/// Regular expression with equality.
struct ReeExpr {
  enum class Kind : std::uint8_t { Eps, Letter, Union, Concat, Plus, Eq, Neq };

  Kind kind = Kind::Eps;
  std::string letter;
  std::vector<ReeExpr> args;

  static ReeExpr eps() { return {}; }
  static ReeExpr sym(std::string a) { return {Kind::Letter, std::move(a), {}}; }
  static ReeExpr either(ReeExpr l, ReeExpr r) { return {Kind::Union, {}, {std::move(l), std::move(r)}}; }
  static ReeExpr concat(ReeExpr l, ReeExpr r) { return {Kind::Concat, {}, {std::move(l), std::move(r)}}; }
  static ReeExpr plus(ReeExpr e) { return {Kind::Plus, {}, {std::move(e)}}; }
  static ReeExpr eq(ReeExpr e) { return {Kind::Eq, {}, {std::move(e)}}; }
  static ReeExpr neq(ReeExpr e) { return {Kind::Neq, {}, {std::move(e)}}; }

  friend bool operator==(const ReeExpr&, const ReeExpr&) = default;
};

/// One block "store r-bar, read a, check c" of a basic REM.
struct RemBlock {
  std::vector<unsigned> store;  // sorted, distinct; may be empty
  std::string letter;
  Condition condition;

  friend bool operator==(const RemBlock&, const RemBlock&) = default;
};

/// Sequence of blocks; zero blocks denotes eps.
struct BasicRem {
  std::vector<RemBlock> blocks;

  RemExpr to_expr() const;
  /// Readable form that parses back to an equivalent expression, e.g.
  /// "!{r1}. a[r1!=] . a[r1==]".
  std::string to_string() const;

  friend bool operator==(const BasicRem&, const BasicRem&) = default;
};

// Concrete syntax (both languages; store/test are REM-only, _= and _!= are
// REE-only):
//   expr    := concat ('|' concat)*
//   concat  := postfix ('.' postfix)*
//   postfix := atom ('^+' | '[' cond ']' | '_=' | '_!=')*
//   atom    := 'eps' | LETTER | '(' expr ')' | '!' '{' REG (',' REG)* '}' '.' atom
//   cond    := conj ('||' conj)*
//   conj    := lit ('&&' lit)*
//   lit     := 'true' | REG '==' | REG '!=' | '~' lit | '(' cond ')'
// LETTER is [A-Za-z][A-Za-z0-9]* other than "eps"; REG is r[1-9][0-9]*.
// Errors are InputError carrying the byte offset.
RemExpr parse_rem(std::string_view text);
ReeExpr parse_ree(std::string_view text);
Condition parse_condition(std::string_view text);

/// Fully parenthesised; parse_rem(to_string(e)) == e.
std::string to_string(const RemExpr& e);
std::string to_string(const ReeExpr& e);
std::string to_string(const Condition& c);

/// Largest register index mentioned in `e`; 0 when none.
unsigned registers_of(const RemExpr& e);
/// Letters mentioned in `e`, sorted.
std::set<std::string> letters_of(const RemExpr& e);
std::set<std::string> letters_of(const ReeExpr& e);
/// True when `e` has no store and no test, i.e. it is a plain regular expression.
bool is_plain(const RemExpr& e);
ReeExpr to_ree(const RemExpr& plain);

/// All sigma' with (e, w, sigma) |- sigma'. Throws Error when sigma has
/// fewer slots than registers_of(e).
std::set<RegisterAssignment> rem_match(const RemExpr& e, const DataPath& w,
                                       const RegisterAssignment& sigma);
bool rem_lang_member(const RemExpr& e, const DataPath& w);
bool ree_member(const ReeExpr& e, const DataPath& w);

/// Expression whose language is exactly the automorphism class of `w`; one
/// register per distinct value, numbered by first occurrence.
RemExpr canonical_rem(const DataPath& w);

}  // namespace graphdef
