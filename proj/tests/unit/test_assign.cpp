#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "graphdef/assign.hpp"
#include "graphdef/error.hpp"
#include "oracle.hpp"

using namespace graphdef;

namespace {

constexpr ValueId E = kEmptyRegister;

BasicRem random_basic(std::mt19937_64& rng, const DataGraph& g, unsigned k, std::size_t blocks) {
  std::uniform_int_distribution<std::size_t> letter(0, g.letter_count() - 1);
  std::uniform_int_distribution<int> coin(0, 3);
  BasicRem e;
  for (std::size_t b = 0; b < blocks; ++b) {
    RemBlock block;
    block.letter = g.letter_name(static_cast<LetterId>(letter(rng)));
    for (unsigned r = 1; r <= k; ++r)
      if (coin(rng) == 0) block.store.push_back(r);
    for (unsigned r = 1; r <= k; ++r) {
      const int c = coin(rng);
      if (c == 0) block.condition = Condition::conj(block.condition, Condition::reg_eq(r));
      if (c == 1) block.condition = Condition::conj(block.condition, Condition::reg_neq(r));
    }
    if (k > 0 && coin(rng) == 0)
      block.condition = Condition::disj(Condition::reg_eq(1), Condition::negate(block.condition));
    e.blocks.push_back(std::move(block));
  }
  return e;
}

AssignState random_state(std::mt19937_64& rng, const DataGraph& g, unsigned k) {
  std::uniform_int_distribution<std::size_t> node(0, g.node_count() - 1), value(0, g.value_count());
  AssignState s{static_cast<NodeId>(node(rng)), {}};
  for (unsigned r = 0; r < k; ++r) {
    const std::size_t d = value(rng);
    s.registers.push_back(d == g.value_count() ? E : static_cast<ValueId>(d));
  }
  return s;
}

bool slot_subset(const SubsetTuple& a, const SubsetTuple& b) {
  for (std::size_t i = 0; i < a.slots.size(); ++i)
    if (!std::includes(b.slots[i].begin(), b.slots[i].end(), a.slots[i].begin(), a.slots[i].end())) return false;
  return true;
}

}  // namespace

TEST_SUITE("assign") {
  TEST_CASE("successors of a single state") {
    const DataGraph g = fixtures::fig1();
    const AssignState s{g.node("v1"), {E}};
    auto succ = successors(g, 1, s, BlockLabel{1, 0, 0});
    std::sort(succ.begin(), succ.end());
    CHECK(succ == std::vector<AssignState>{{g.node("v2"), {0}}, {g.node("z2"), {0}}});
    CHECK(successors(g, 1, s, BlockLabel{1, 0, 1}).empty());
    // Without a store the empty register differs from every value.
    CHECK(successors(g, 1, s, BlockLabel{0, 0, 1}).empty());
    CHECK(successors(g, 1, s, BlockLabel{0, 0, 0}).size() == 2);
  }

  TEST_CASE("label counts") {
    const DataGraph g = fixtures::fig1();
    CHECK(labels(g, 0).size() == 1);
    CHECK(labels(g, 1).size() == 4);
    const DataGraph two({"a", "b"}, {{"x", "0"}}, {});
    const auto ls = labels(two, 2);
    CHECK(ls.size() == 32);
    CHECK(ls.front() == BlockLabel{0, 0, 0});
    CHECK(ls.back() == BlockLabel{3, 1, 3});
  }

  TEST_CASE("state numbering") {
    const DataGraph g = fixtures::fig1();
    const AssignmentGraph t(g, 2);
    CHECK(t.state_count() == 10 * 25);
    for (StateId id = 0; id < t.state_count(); ++id) {
      const AssignState s = t.decode(id);
      CHECK(t.encode(s) == id);
      CHECK(t.node_of(id) == s.node);
    }
    CHECK_THROWS_AS(AssignmentGraph(g, 40), BudgetExceeded);
  }

  TEST_CASE("run_reach on the running example") {
    const DataGraph g = fixtures::fig1();
    BasicRem e2;
    e2.blocks = {{{1}, "a", Condition::top()}, {{2}, "a", Condition::reg_eq(1)}, {{}, "a", Condition::reg_eq(2)}};
    const AssignState start{g.node("v1"), {E, E}};
    CHECK(run_reach(g, 2, start, e2) == std::vector<AssignState>{{g.node("v4"), {0, 1}}});
    CHECK(run_reach(g, 2, start, BasicRem{}) == std::vector<AssignState>{start});
    BasicRem bad;
    bad.blocks = {{{}, "a", Condition::reg_eq(3)}};
    CHECK_THROWS_AS(run_reach(g, 2, start, bad), Error);
  }

  TEST_CASE("tuple steps") {
    const DataGraph g = fixtures::fig1();
    const AssignmentGraph t(g, 1);
    const SubsetTuple init = t.initial_tuple();
    CHECK(init.slots.size() == 10);
    CHECK_FALSE(init.all_empty());
    const SubsetTuple next = t.step(init, BlockLabel{1, 0, 1});
    // Only z2 -> v2 keeps the stored value.
    for (NodeId v = 0; v < 10; ++v) {
      if (v == g.node("z2")) {
        CHECK(next.slots[v] == std::vector<StateId>{t.encode({g.node("v2"), {1}})});
      } else {
        CHECK(next.slots[v].empty());
      }
    }
    CHECK(t.step(next, BlockLabel{0, 0, 1}).all_empty());
    std::vector<SubsetTuple> all;
    t.step_all_types(init, 0, 1, all);
    CHECK(all.size() == 2);
    CHECK(all[1] == next);
    CHECK(all[0] == t.step(init, BlockLabel{1, 0, 0}));
    CHECK(tuple_step(g, 1, init, BlockLabel{1, 0, 1}) == next);
  }

  TEST_CASE("run/path correspondence") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 150; ++i) {
      const DataGraph g = fixtures::random_graph(rng, {1, 4, 3, 2, 0.35});
      const unsigned k = static_cast<unsigned>(i % 3);
      const BasicRem e = random_basic(rng, g, k, static_cast<std::size_t>(i % 5));
      const AssignState s = random_state(rng, g, k);
      const auto fast = run_reach(g, k, s, e);
      const auto slow = oracle::run_reach_by_paths(g, k, s, e);
      CHECK(std::set<AssignState>(fast.begin(), fast.end()) == slow);
    }
  }

  TEST_CASE("tuple_step is monotone") {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 100; ++i) {
      const DataGraph g = fixtures::random_graph(rng, {1, 4, 3, 2, 0.4});
      const unsigned k = static_cast<unsigned>(i % 3);
      const AssignmentGraph t(g, k);
      const auto ls = t.labels();
      std::uniform_int_distribution<std::size_t> pick(0, ls.size() - 1);
      std::bernoulli_distribution keep(0.5);
      SubsetTuple big = t.initial_tuple();
      for (int j = 0; j < 2; ++j) {
        SubsetTuple other = t.step(t.initial_tuple(), ls[pick(rng)]);
        for (std::size_t p = 0; p < big.slots.size(); ++p) {
          std::vector<StateId> merged;
          std::set_union(big.slots[p].begin(), big.slots[p].end(), other.slots[p].begin(), other.slots[p].end(),
                         std::back_inserter(merged));
          big.slots[p] = merged;
        }
      }
      SubsetTuple small = big;
      for (auto& slot : small.slots) {
        std::vector<StateId> kept;
        for (StateId s : slot)
          if (keep(rng)) kept.push_back(s);
        slot = kept;
      }
      const BlockLabel l = ls[pick(rng)];
      CHECK(slot_subset(t.step(small, l), t.step(big, l)));
    }
  }

  TEST_CASE("repeated tuples can be excised") {
    std::mt19937_64 rng(107);
    int exercised = 0;
    for (int i = 0; i < 200; ++i) {
      const DataGraph g = fixtures::random_graph(rng, {1, 4, 2, 1, 0.5});
      const unsigned k = static_cast<unsigned>(i % 3);
      const AssignmentGraph t(g, k);
      const auto ls = t.labels();
      std::uniform_int_distribution<std::size_t> pick(0, ls.size() - 1);
      std::vector<BlockLabel> seq(8);
      for (auto& l : seq) l = ls[pick(rng)];
      std::vector<SubsetTuple> trace{t.initial_tuple()};
      for (const auto& l : seq) trace.push_back(t.step(trace.back(), l));
      for (std::size_t j = 0; j < trace.size(); ++j)
        for (std::size_t j2 = j + 1; j2 < trace.size(); ++j2) {
          if (!(trace[j] == trace[j2])) continue;
          ++exercised;
          SubsetTuple cur = t.initial_tuple();
          for (std::size_t s = 0; s < seq.size(); ++s)
            if (s < j || s >= j2) cur = t.step(cur, seq[s]);
          CHECK(cur == trace.back());
        }
    }
    CHECK(exercised > 0);
  }

  TEST_CASE("dump lists every transition") {
    const DataGraph g = fixtures::single_edge();
    const AssignmentGraph t(g, 1);
    const std::string text = t.dump();
    // From node 1: two stores x two register contents; only matching types fire.
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK(text.find("(1,(_)) -[!{r1}. a[r1==]]-> (2,(5))") != std::string::npos);
  }
}
