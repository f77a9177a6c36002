#include <algorithm>
#include <cctype>
#include <type_traits>

#include "graphdef/expr.hpp"

namespace graphdef {

RemExpr RemExpr::store(std::vector<unsigned> regs, RemExpr e) {
  std::sort(regs.begin(), regs.end());
  regs.erase(std::unique(regs.begin(), regs.end()), regs.end());
  if (regs.empty()) throw Error("store needs at least one register");
  if (regs.front() == 0) throw Error("registers are numbered from 1");
  RemExpr out;
  out.kind = Kind::Store;
  out.registers = std::move(regs);
  out.args.push_back(std::move(e));
  return out;
}

unsigned Condition::max_register() const {
  unsigned m = (kind == Kind::RegEq || kind == Kind::RegNeq) ? reg : 0;
  for (const auto& a : args) m = std::max(m, a.max_register());
  return m;
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool is_register_name(std::string_view id) {
  if (id.size() < 2 || id[0] != 'r' || id[1] == '0') return false;
  return std::all_of(id.begin() + 1, id.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

template <class Expr>
class Parser {
  static constexpr bool kRem = std::is_same_v<Expr, RemExpr>;

 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_expression_text() {
    Expr e = parse_union();
    expect_end();
    return e;
  }

  Condition parse_condition_text() {
    Condition c = parse_disj();
    expect_end();
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw InputError("syntax error: " + msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw InputError("syntax error: " + msg, at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::string_view peek_ident() {
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) return {};
    std::size_t j = pos_;
    while (j < text_.size() && is_ident_char(text_[j])) ++j;
    return text_.substr(pos_, j - pos_);
  }

  unsigned parse_register() {
    auto id = peek_ident();
    if (!is_register_name(id)) fail("expected a register r1, r2, ...");
    pos_ += id.size();
    try {
      return static_cast<unsigned>(std::stoul(std::string(id.substr(1))));
    } catch (const std::out_of_range&) {
      fail("register index out of range");
    }
  }

  Expr parse_union() {
    Expr e = parse_concat();
    // '|' but not the '||' of conditions (which never occurs here).
    while (accept("|")) e = Expr::either(std::move(e), parse_concat());
    return e;
  }

  Expr parse_concat() {
    Expr e = parse_postfix();
    while (accept(".")) e = Expr::concat(std::move(e), parse_postfix());
    return e;
  }

  Expr parse_postfix() {
    Expr e = parse_atom();
    for (;;) {
      const std::size_t at = (skip_ws(), pos_);
      if (accept("^+")) {
        e = Expr::plus(std::move(e));
      } else if (peek("[")) {
        if constexpr (kRem) {
          ++pos_;
          Condition c = parse_disj();
          expect("]");
          e = RemExpr::test(std::move(e), std::move(c));
        } else {
          fail_at("conditions [..] are only allowed in REM", at);
        }
      } else if (accept("_!=")) {
        if constexpr (kRem) {
          fail_at("'_!=' is only allowed in REE", at);
        } else {
          e = ReeExpr::neq(std::move(e));
        }
      } else if (accept("_=")) {
        if constexpr (kRem) {
          fail_at("'_=' is only allowed in REE", at);
        } else {
          e = ReeExpr::eq(std::move(e));
        }
      } else {
        return e;
      }
    }
  }

  Expr parse_atom() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept("(")) {
      Expr e = parse_union();
      expect(")");
      return e;
    }
    if (accept("!")) {
      if constexpr (kRem) {
        expect("{");
        std::vector<unsigned> regs{parse_register()};
        while (accept(",")) regs.push_back(parse_register());
        expect("}");
        expect(".");
        return RemExpr::store(std::move(regs), parse_atom());
      } else {
        fail_at("register stores '!{..}' are only allowed in REM", at);
      }
    }
    auto id = peek_ident();
    if (id.empty()) {
      if (pos_ >= text_.size()) fail("unexpected end of input");
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    pos_ += id.size();
    if (id == "eps") return Expr::eps();
    return Expr::sym(std::string(id));
  }

  Condition parse_disj() {
    Condition c = parse_conj();
    while (accept("||")) c = Condition::disj(std::move(c), parse_conj());
    return c;
  }

  Condition parse_conj() {
    Condition c = parse_lit();
    while (accept("&&")) c = Condition::conj(std::move(c), parse_lit());
    return c;
  }

  Condition parse_lit() {
    if (accept("~")) return Condition::negate(parse_lit());
    if (accept("(")) {
      Condition c = parse_disj();
      expect(")");
      return c;
    }
    auto id = peek_ident();
    if (id == "true") {
      pos_ += id.size();
      return Condition::top();
    }
    const unsigned r = parse_register();
    if (accept("==")) return Condition::reg_eq(r);
    if (accept("!=")) return Condition::reg_neq(r);
    fail("expected '==' or '!=' after register");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RemExpr parse_rem(std::string_view text) { return Parser<RemExpr>(text).parse_expression_text(); }
ReeExpr parse_ree(std::string_view text) { return Parser<ReeExpr>(text).parse_expression_text(); }
Condition parse_condition(std::string_view text) {
  return Parser<RemExpr>(text).parse_condition_text();
}

namespace {

// Binding strength: 0 union / or, 1 concat / and, 2 postfix / not, 3 atom.
std::string wrap(std::string s, int level, int context) { return level < context ? "(" + s + ")" : s; }

std::string print(const Condition& c, int context) {
  using K = Condition::Kind;
  switch (c.kind) {
    case K::True: return "true";
    case K::RegEq: return "r" + std::to_string(c.reg) + "==";
    case K::RegNeq: return "r" + std::to_string(c.reg) + "!=";
    case K::Or: return wrap(print(c.args[0], 0) + " || " + print(c.args[1], 1), 0, context);
    case K::And: return wrap(print(c.args[0], 1) + " && " + print(c.args[1], 2), 1, context);
    case K::Not: return "~" + print(c.args[0], 2);
  }
  return {};
}

std::string print(const RemExpr& e, int context) {
  using K = RemExpr::Kind;
  switch (e.kind) {
    case K::Eps: return "eps";
    case K::Letter: return e.letter;
    case K::Union: return wrap(print(e.args[0], 0) + " | " + print(e.args[1], 1), 0, context);
    case K::Concat: return wrap(print(e.args[0], 1) + " . " + print(e.args[1], 2), 1, context);
    case K::Plus: return wrap(print(e.args[0], 2) + "^+", 2, context);
    case K::Test: return wrap(print(e.args[0], 2) + "[" + print(e.condition, 0) + "]", 2, context);
    case K::Store: {
      std::string regs;
      for (auto r : e.registers) regs += (regs.empty() ? "r" : ",r") + std::to_string(r);
      // The operand of a store is a single atom.
      return "!{" + regs + "}. " + print(e.args[0], 3);
    }
  }
  return {};
}

std::string print(const ReeExpr& e, int context) {
  using K = ReeExpr::Kind;
  switch (e.kind) {
    case K::Eps: return "eps";
    case K::Letter: return e.letter;
    case K::Union: return wrap(print(e.args[0], 0) + " | " + print(e.args[1], 1), 0, context);
    case K::Concat: return wrap(print(e.args[0], 1) + " . " + print(e.args[1], 2), 1, context);
    case K::Plus: return wrap(print(e.args[0], 2) + "^+", 2, context);
    case K::Eq:
    case K::Neq:
      // Restrictions always parenthesize their operand: (a)_=, (a . b)_!=.
      return "(" + print(e.args[0], 0) + ")" + (e.kind == K::Eq ? "_=" : "_!=");
  }
  return {};
}

}  // namespace

std::string to_string(const Condition& c) { return print(c, 0); }
std::string to_string(const RemExpr& e) { return print(e, 0); }
std::string to_string(const ReeExpr& e) { return print(e, 0); }

RemExpr BasicRem::to_expr() const {
  std::optional<RemExpr> out;
  for (const auto& b : blocks) {
    // Same shape the parser gives "!{r}. a[c]": the test wraps the store.
    RemExpr step = RemExpr::sym(b.letter);
    if (!b.store.empty()) step = RemExpr::store(b.store, std::move(step));
    if (b.condition.kind != Condition::Kind::True) step = RemExpr::test(std::move(step), b.condition);
    out = out ? RemExpr::concat(std::move(*out), std::move(step)) : std::move(step);
  }
  return out ? std::move(*out) : RemExpr::eps();
}

std::string BasicRem::to_string() const { return graphdef::to_string(to_expr()); }

}  // namespace graphdef
