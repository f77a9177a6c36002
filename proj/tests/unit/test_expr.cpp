#include <random>

#include "doctest.h"
#include "graphdef/error.hpp"
#include "graphdef/expr.hpp"
#include "oracle.hpp"

using namespace graphdef;

namespace {

DataPath P(const char* s) { return DataPath::parse(s); }

RegisterAssignment regs(std::initializer_list<const char*> values) {
  RegisterAssignment out;
  for (auto v : values) out.push_back(v ? std::optional<std::string>(v) : std::nullopt);
  return out;
}

DataPath random_path(std::mt19937_64& rng, std::size_t max_len, int values, int letters) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> val(0, values - 1), let(0, letters - 1);
  DataPath w;
  const std::size_t m = len(rng);
  w.values.push_back(std::to_string(val(rng)));
  for (std::size_t i = 0; i < m; ++i) {
    w.letters.push_back(std::string(1, static_cast<char>('a' + let(rng))));
    w.values.push_back(std::to_string(val(rng)));
  }
  return w;
}

}  // namespace

TEST_SUITE("expr") {
  TEST_CASE("parse the running examples") {
    const RemExpr e2 = parse_rem("!{r1}. a . !{r2}. a[r1==] . a[r2==]");
    const RemExpr expected = RemExpr::concat(
        RemExpr::concat(RemExpr::store({1}, RemExpr::sym("a")),
                        RemExpr::test(RemExpr::store({2}, RemExpr::sym("a")), Condition::reg_eq(1))),
        RemExpr::test(RemExpr::sym("a"), Condition::reg_eq(2)));
    CHECK(e2 == expected);
    CHECK(registers_of(e2) == 2);
    CHECK(parse_rem("eps") == RemExpr::eps());
    CHECK(registers_of(RemExpr::eps()) == 0);

    const ReeExpr e3 = parse_ree("(a . (a)_= . a)_=");
    CHECK(e3 == ReeExpr::eq(ReeExpr::concat(ReeExpr::concat(ReeExpr::sym("a"), ReeExpr::eq(ReeExpr::sym("a"))),
                                            ReeExpr::sym("a"))));
  }

  TEST_CASE("precedence") {
    CHECK(parse_rem("a . b | c") == RemExpr::either(RemExpr::concat(RemExpr::sym("a"), RemExpr::sym("b")),
                                                     RemExpr::sym("c")));
    CHECK(parse_rem("a . b^+") == RemExpr::concat(RemExpr::sym("a"), RemExpr::plus(RemExpr::sym("b"))));
    CHECK(parse_rem("!{r1,r2}. a . b") ==
          RemExpr::concat(RemExpr::store({1, 2}, RemExpr::sym("a")), RemExpr::sym("b")));
    CHECK(parse_condition("r1== || r2!= && ~r3==") ==
          Condition::disj(Condition::reg_eq(1),
                          Condition::conj(Condition::reg_neq(2), Condition::negate(Condition::reg_eq(3)))));
  }

  TEST_CASE("syntax errors carry offsets") {
    try {
      parse_rem("a . (b | ");
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(e.position() == 9);
    }
    CHECK_THROWS_AS(parse_rem("(a)_="), InputError);
    CHECK_THROWS_AS(parse_ree("a[r1==]"), InputError);
    CHECK_THROWS_AS(parse_ree("!{r1}. a"), InputError);
    CHECK_THROWS_AS(parse_rem("!{r0}. a"), InputError);
    CHECK_THROWS_AS(parse_rem("a b"), InputError);
    CHECK_THROWS_AS(parse_rem(""), InputError);
  }

  TEST_CASE("print then parse is the identity") {
    std::mt19937_64 rng(5);
    const std::vector<std::string> sigma{"a", "b"};
    for (int i = 0; i < 300; ++i) {
      const RemExpr e = oracle::random_rem(rng, 1 + i % 9, sigma, 2);
      CHECK(parse_rem(to_string(e)) == e);
      const ReeExpr f = oracle::random_ree(rng, 1 + i % 9, sigma);
      CHECK(parse_ree(to_string(f)) == f);
    }
    CHECK(to_string(ReeExpr::neq(ReeExpr::eps())) == "(eps)_!=");
  }

  TEST_CASE("cond_eval") {
    CHECK(cond_eval(Condition::reg_eq(1), "3", regs({"3"})));
    CHECK_FALSE(cond_eval(Condition::reg_eq(1), "3", regs({nullptr})));
    CHECK(cond_eval(Condition::reg_neq(1), "3", regs({nullptr})));
    CHECK_FALSE(cond_eval(parse_condition("r1!= && r2=="), "5", regs({"5", "5"})));
    CHECK(cond_eval(Condition::top(), "5", {}));
    CHECK_THROWS_AS(cond_eval(Condition::reg_eq(2), "5", regs({"5"})), Error);
  }

  TEST_CASE("rem_match") {
    const RemExpr e = parse_rem("!{r1}. a[r1==]");
    CHECK(rem_match(e, P("3a3"), regs({nullptr})) == std::set<RegisterAssignment>{regs({"3"})});
    CHECK(rem_match(e, P("3a4"), regs({nullptr})).empty());
    CHECK(rem_match(RemExpr::eps(), P("9"), regs({"7"})) == std::set<RegisterAssignment>{regs({"7"})});
    CHECK(rem_lang_member(e, P("3a3")));
    CHECK_FALSE(rem_lang_member(e, P("3a4")));
    CHECK(rem_lang_member(RemExpr::eps(), P("9")));
    CHECK_THROWS_AS(rem_match(parse_rem("a[r2==]"), P("1a1"), regs({nullptr})), Error);

    const RemExpr e2 = parse_rem("!{r1}. a . !{r2}. a[r1==] . a[r2==]");
    CHECK(rem_lang_member(e2, P("0a1a0a1")));
    CHECK(rem_lang_member(e2, P("2a3a2a3")));
    CHECK_FALSE(rem_lang_member(e2, P("0a1a0a2")));
    CHECK_FALSE(rem_lang_member(e2, P("1a2a3a2")));
    CHECK(rem_lang_member(parse_rem("(a[r1!=])^+"), P("1a2a3")));
    CHECK_FALSE(rem_lang_member(parse_rem("a^+"), P("1")));
  }

  TEST_CASE("ree_member") {
    const ReeExpr e = parse_ree("((a)_!= . (b)_!=)_!=");
    CHECK(ree_member(e, P("1a2b3")));
    CHECK_FALSE(ree_member(e, P("1a2b1")));
    CHECK(ree_member(ReeExpr::eps(), P("5")));
    CHECK(ree_member(parse_ree("(a)_="), P("4a4")));
    CHECK_FALSE(ree_member(parse_ree("(a)_="), P("4a5")));
    const ReeExpr e3 = parse_ree("(a . (a)_= . a)_=");
    CHECK(ree_member(e3, P("0a1a1a0")));
    CHECK_FALSE(ree_member(e3, P("3a1a1a0")));
    CHECK_FALSE(ree_member(e3, P("1a2a3a1")));
  }

  TEST_CASE("ree concatenation splits") {
    std::mt19937_64 rng(21);
    const std::vector<std::string> sigma{"a", "b"};
    for (int i = 0; i < 200; ++i) {
      const ReeExpr e = oracle::random_ree(rng, 1 + i % 4, sigma);
      const ReeExpr f = oracle::random_ree(rng, 1 + i % 3, sigma);
      const DataPath w = random_path(rng, 4, 3, 2);
      bool split = false;
      for (std::size_t j = 0; j <= w.length() && !split; ++j) {
        DataPath l({w.values.begin(), w.values.begin() + static_cast<long>(j) + 1},
                   {w.letters.begin(), w.letters.begin() + static_cast<long>(j)});
        DataPath r({w.values.begin() + static_cast<long>(j), w.values.end()},
                   {w.letters.begin() + static_cast<long>(j), w.letters.end()});
        split = ree_member(e, l) && ree_member(f, r);
      }
      CHECK(ree_member(ReeExpr::concat(e, f), w) == split);
    }
  }

  TEST_CASE("canonical_rem") {
    const RemExpr c = canonical_rem(P("0a1a0a1"));
    CHECK(registers_of(c) == 2);
    for (auto w : {"0a1a0a1", "2a3a2a3"}) CHECK(rem_lang_member(c, P(w)));
    // e_2 also accepts 0a0a0a0; the canonical expression insists on two values.
    for (auto w : {"0a1a0a2", "0a0a0a0", "1a2a3a2", "0a1a0"}) CHECK_FALSE(rem_lang_member(c, P(w)));
    const RemExpr single = canonical_rem(P("4"));
    CHECK(single == RemExpr::store({1}, RemExpr::eps()));
    CHECK(rem_lang_member(single, P("8")));
    const RemExpr loop = canonical_rem(P("7a7"));
    CHECK(rem_lang_member(loop, P("5a5")));
    CHECK_FALSE(rem_lang_member(loop, P("5a6")));
    CHECK(registers_of(canonical_rem(P("0a1a2"))) == 3);
  }

  TEST_CASE("canonical_rem defines the automorphism class") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 300; ++i) {
      const DataPath w = random_path(rng, 4, 3, 2);
      const DataPath v = random_path(rng, 4, 3, 2);
      CHECK(rem_lang_member(canonical_rem(w), v) == (canonical_path(w) == canonical_path(v)));
      CHECK(rem_lang_member(canonical_rem(w), w));
    }
  }

  TEST_CASE("membership is invariant under renaming") {
    std::mt19937_64 rng(13);
    const std::vector<std::string> sigma{"a", "b"};
    for (int i = 0; i < 300; ++i) {
      const RemExpr e = oracle::random_rem(rng, 1 + i % 6, sigma, 2);
      const ReeExpr f = oracle::random_ree(rng, 1 + i % 6, sigma);
      const DataPath w = random_path(rng, 4, 3, 2);
      DataPath renamed = w;
      for (auto& d : renamed.values) d = std::to_string((std::stoi(d) + 1) % 3 + 10);
      CHECK(rem_lang_member(e, w) == rem_lang_member(e, renamed));
      CHECK(ree_member(f, w) == ree_member(f, renamed));
    }
  }

  TEST_CASE("basic rem rendering") {
    BasicRem b;
    CHECK(b.to_string() == "eps");
    CHECK(b.to_expr() == RemExpr::eps());
    b.blocks.push_back({{1}, "a", Condition::reg_neq(1)});
    b.blocks.push_back({{}, "a", Condition::conj(Condition::reg_eq(1), Condition::reg_neq(2))});
    CHECK(b.to_string() == "!{r1}. a[r1!=] . a[r1== && r2!=]");
    CHECK(parse_rem(b.to_string()) == b.to_expr());
  }
}
