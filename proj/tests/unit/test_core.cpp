#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "graphdef/core.hpp"
#include "graphdef/error.hpp"
#include "oracle.hpp"

using namespace graphdef;

namespace {

GraphPath path_of(const DataGraph& g, std::initializer_list<const char*> nodes) {
  GraphPath p;
  for (auto n : nodes) {
    if (!p.nodes.empty()) p.letters.push_back(0);
    p.nodes.push_back(g.node(n));
  }
  return p;
}

NodeRelation random_rel(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution pick(0.3);
  NodeRelation r(2, n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (pick(rng)) r.insert({u, v});
  return r;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("graph construction validates input") {
    CHECK_THROWS_AS(DataGraph({"a"}, {{"u", "0"}, {"u", "1"}}, {}), InputError);
    CHECK_THROWS_AS(DataGraph({"a"}, {{"u", "0"}}, {{"u", "a", "w"}}), InputError);
    CHECK_THROWS_AS(DataGraph({"a"}, {{"u", "0"}}, {{"u", "b", "u"}}), InputError);
    CHECK_THROWS_AS(DataGraph({"a", "a"}, {{"u", "0"}}, {}), InputError);
  }

  TEST_CASE("fig1 shape") {
    const DataGraph g = fixtures::fig1();
    CHECK(g.node_count() == 10);
    CHECK(g.value_count() == 4);
    CHECK(g.edges().size() == 12);
    CHECK(g.same_value(g.node("v1"), g.node("v3")));
    CHECK_FALSE(g.same_value(g.node("v1"), g.node("v2")));
    const auto succ = g.successors(g.node("v1"), 0);
    CHECK(succ.size() == 2);
    CHECK(g.has_edge(g.node("v3"), 0, g.node("v3'")));
    CHECK_FALSE(g.has_edge(g.node("v4"), 0, g.node("v1")));
  }

  TEST_CASE("canonical_path") {
    CHECK(canonical_path(DataPath::parse("2a3a2a3")).to_string() == "0a1a0a1");
    CHECK(canonical_path(DataPath::parse("2a3a2a3")) == canonical_path(DataPath::parse("0a1a0a1")));
    CHECK(canonical_path(DataPath::parse("9")).to_string() == "0");
    CHECK(canonical_path(DataPath::parse("5a5a6")).to_string() == "0a0a1");
    CHECK(canonical_path(DataPath::parse("10 a 11 b 10")).to_string() == "0a1b0");
  }

  TEST_CASE("canonical_path is idempotent and a complete invariant") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> val(0, 3), len(0, 5), let(0, 1);
    for (int round = 0; round < 300; ++round) {
      auto make = [&] {
        DataPath w;
        const int m = len(rng);
        w.values.push_back(std::to_string(val(rng)));
        for (int i = 0; i < m; ++i) {
          w.letters.push_back(let(rng) ? "a" : "b");
          w.values.push_back(std::to_string(val(rng)));
        }
        return w;
      };
      const DataPath w1 = make(), w2 = make();
      const CanonicalPath c = canonical_path(w1);
      CHECK(canonical_path(c.as_data_path()) == c);
      CHECK((canonical_path(w1) == canonical_path(w2)) == oracle::automorphic_bruteforce(w1, w2));
      // Renaming by a bijection keeps the canonical form.
      DataPath renamed = w1;
      for (auto& d : renamed.values) d = "x" + d;
      CHECK(canonical_path(renamed) == c);
    }
  }

  TEST_CASE("data path parsing and concatenation") {
    const DataPath w = DataPath::parse("0a1a0a1");
    CHECK(w.length() == 3);
    CHECK(w.to_string() == "0a1a0a1");
    CHECK(DataPath::parse("0a1").concat(DataPath::parse("1b2")).to_string() == "0a1b2");
    CHECK_THROWS_AS(DataPath::parse("0a1").concat(DataPath::parse("2b2")), Error);
    CHECK_THROWS(DataPath({"1"}, {"a"}));
  }

  TEST_CASE("data_path_of") {
    const DataGraph g = fixtures::fig1();
    CHECK(data_path_of(g, path_of(g, {"v1", "v2", "v3", "v4"})).to_string() == "0a1a0a1");
    CHECK(data_path_of(g, path_of(g, {"z1"})).to_string() == "3");
    CHECK(data_path_of(g, path_of(g, {"v1", "z2", "v2", "v3"})).to_string() == "0a1a1a0");
    CHECK_THROWS_AS(data_path_of(g, path_of(g, {"v4", "v1"})), Error);
  }

  TEST_CASE("relation operators") {
    const DataGraph g = fixtures::fig1();
    const NodeRelation s = fixtures::pairs(g, {{"v1", "v3"}, {"v1", "v4"}});
    CHECK(rel_eq_restrict(g, s) == fixtures::pairs(g, {{"v1", "v3"}}));
    CHECK(rel_neq_restrict(g, s) == fixtures::pairs(g, {{"v1", "v4"}}));
    CHECK(rel_compose(s, NodeRelation(2, g.node_count())).empty());

    const DataGraph three({"a"}, {{"1", "0"}, {"2", "0"}, {"3", "0"}}, {});
    const NodeRelation left = fixtures::pairs(three, {{"1", "2"}});
    const NodeRelation right = fixtures::pairs(three, {{"2", "3"}});
    CHECK(rel_compose(left, right) == fixtures::pairs(three, {{"1", "3"}}));
    CHECK(rel_union(left, right).size() == 2);

    NodeRelation ternary(3, 3);
    ternary.insert({0, 1, 2});
    CHECK_THROWS_AS(rel_union(ternary, ternary), Error);
  }

  TEST_CASE("relation algebra laws on random relations") {
    std::mt19937_64 rng(11);
    const DataGraph g = fixtures::random_graph(rng, {4, 4, 2, 1, 0.3});
    for (int round = 0; round < 100; ++round) {
      const auto a = random_rel(rng, g.node_count()), b = random_rel(rng, g.node_count()),
                 c = random_rel(rng, g.node_count());
      CHECK(rel_union(a, b) == rel_union(b, a));
      CHECK(rel_union(rel_union(a, b), c) == rel_union(a, rel_union(b, c)));
      CHECK(rel_compose(rel_compose(a, b), c) == rel_compose(a, rel_compose(b, c)));
      CHECK(rel_compose(a, rel_union(b, c)) == rel_union(rel_compose(a, b), rel_compose(a, c)));
      CHECK(rel_compose(rel_union(a, b), c) == rel_union(rel_compose(a, c), rel_compose(b, c)));
      const auto eq = rel_eq_restrict(g, a), neq = rel_neq_restrict(g, a);
      CHECK(rel_union(eq, neq) == a);
      CHECK((eq.matrix() & neq.matrix()).empty());
    }
  }

  TEST_CASE("node relations of other arities") {
    NodeRelation r(3, 4);
    r.insert({2, 0, 1});
    r.insert({0, 3, 3});
    r.insert({2, 0, 1});
    CHECK(r.size() == 2);
    CHECK(r.contains({0, 3, 3}));
    CHECK(r.tuples().front() == Tuple{0, 3, 3});
    CHECK_THROWS_AS(r.insert({0, 1}), Error);
    CHECK_THROWS_AS(r.insert({0, 1, 4}), Error);
    CHECK_THROWS_AS(r.matrix(), Error);
  }

  TEST_CASE("bit matrix closure") {
    BitMatrix m(3);
    m.set(0, 1);
    m.set(1, 2);
    const BitMatrix t = m.transitive_closure();
    CHECK(t.test(0, 2));
    CHECK_FALSE(t.test(0, 0));
    CHECK(t.count() == 3);
    CHECK(m.is_subset_of(t));
  }
}
