#include <deque>
#include <limits>
#include <unordered_map>

#include "graphdef/eval.hpp"

namespace graphdef {

namespace {

using State = RegisterAutomaton::State;
using PositionOp = RegisterAutomaton::PositionOp;

struct Fragment {
  State initial;
  State final;
};

class Compiler {
 public:
  RegisterAutomaton run(const RemExpr& e) {
    const Fragment f = build(e);
    a_.initial = f.initial;
    a_.finals = {f.final};
    a_.registers = registers_of(e);
    return std::move(a_);
  }

 private:
  State fresh() { return static_cast<State>(a_.state_count++); }

  void silent(State from, State to) { a_.op_transitions.push_back({from, PositionOp{}, to}); }

  Fragment build(const RemExpr& e) {
    using K = RemExpr::Kind;
    switch (e.kind) {
      case K::Eps: {
        const State s = fresh();
        return {s, s};
      }
      case K::Letter: {
        const State s = fresh(), t = fresh();
        a_.letter_transitions.push_back({s, e.letter, t});
        return {s, t};
      }
      case K::Union: {
        const State s = fresh(), t = fresh();
        for (const auto& arg : e.args) {
          const Fragment f = build(arg);
          silent(s, f.initial);
          silent(f.final, t);
        }
        return {s, t};
      }
      case K::Concat: {
        const Fragment l = build(e.args[0]);
        const Fragment r = build(e.args[1]);
        silent(l.final, r.initial);
        return {l.initial, r.final};
      }
      case K::Plus: {
        const Fragment f = build(e.args[0]);
        silent(f.final, f.initial);
        return f;
      }
      case K::Test: {
        const Fragment f = build(e.args[0]);
        const State t = fresh();
        a_.op_transitions.push_back({f.final, PositionOp{PositionOp::Kind::Test, {}, e.condition}, t});
        return {f.initial, t};
      }
      case K::Store: {
        const State s = fresh();
        const Fragment f = build(e.args[0]);
        a_.op_transitions.push_back({s, PositionOp{PositionOp::Kind::Store, e.registers, {}}, f.initial});
        return {s, f.final};
      }
    }
    return {0, 0};
  }

  RegisterAutomaton a_;
};

struct VectorHash {
  std::size_t operator()(const std::vector<ValueId>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h = h * 1000003u ^ x;
    return h;
  }
};

// Reachability over configurations (state, node, assignment) from every
// source node, with letters costing 1 and position ops costing 0.
class ProductSearch {
 public:
  ProductSearch(const DataGraph& g, const RegisterAutomaton& a) : g_(g), a_(a) {
    empty_ = static_cast<ValueId>(g.value_count());
    ops_.resize(a.state_count);
    for (std::size_t i = 0; i < a.op_transitions.size(); ++i) ops_[a.op_transitions[i].from].push_back(i);
    letters_.resize(a.state_count);
    for (const auto& t : a.letter_transitions) {
      if (auto l = g.find_letter(t.letter)) letters_[t.from].push_back({*l, t.to});
    }
    is_final_.assign(a.state_count, false);
    for (auto f : a.finals) is_final_[f] = true;
  }

  NodeRelation run(std::size_t max_letters) {
    BitMatrix out(g_.node_count());
    for (NodeId u = 0; u < g_.node_count(); ++u) search_from(u, max_letters, out);
    return NodeRelation::from_matrix(std::move(out));
  }

 private:
  struct Config {
    State state;
    NodeId node;
    std::uint32_t assignment;
    std::size_t letters;
  };

  std::uint32_t intern(std::vector<ValueId> regs) {
    auto [it, fresh] = assignment_ids_.emplace(std::move(regs), static_cast<std::uint32_t>(assignments_.size()));
    if (fresh) assignments_.push_back(&it->first);
    return it->second;
  }

  void search_from(NodeId source, std::size_t max_letters, BitMatrix& out) {
    std::unordered_map<std::uint64_t, std::size_t> best;  // config key -> fewest letters
    std::deque<Config> queue;
    auto key = [&](const Config& c) {
      return (static_cast<std::uint64_t>(c.assignment) * g_.node_count() + c.node) * a_.state_count + c.state;
    };
    auto push = [&](Config c, bool front) {
      auto [it, fresh] = best.emplace(key(c), c.letters);
      if (!fresh) {
        if (it->second <= c.letters) return;
        it->second = c.letters;
      }
      front ? queue.push_front(c) : queue.push_back(c);
    };
    push({a_.initial, source, intern(std::vector<ValueId>(a_.registers, empty_)), 0}, false);
    while (!queue.empty()) {
      const Config c = queue.front();
      queue.pop_front();
      if (best.at(key(c)) < c.letters) continue;
      if (is_final_[c.state]) out.set(source, c.node);
      const ValueId here = g_.value_of(c.node);
      for (auto idx : ops_[c.state]) {
        const auto& t = a_.op_transitions[idx];
        switch (t.op.kind) {
          case PositionOp::Kind::Silent:
            push({t.to, c.node, c.assignment, c.letters}, true);
            break;
          case PositionOp::Kind::Store: {
            std::vector<ValueId> regs = *assignments_[c.assignment];
            for (auto r : t.op.registers) regs[r - 1] = here;
            push({t.to, c.node, intern(std::move(regs)), c.letters}, true);
            break;
          }
          case PositionOp::Kind::Test: {
            const auto& regs = *assignments_[c.assignment];
            if (evaluate(t.op.condition, [&](unsigned r) { return regs[r - 1] == here; })) {
              push({t.to, c.node, c.assignment, c.letters}, true);
            }
            break;
          }
        }
      }
      if (c.letters >= max_letters) continue;
      for (auto [letter, to] : letters_[c.state]) {
        for (NodeId next : g_.successors(c.node, letter)) {
          push({to, next, c.assignment, c.letters + 1}, false);
        }
      }
    }
  }

  const DataGraph& g_;
  const RegisterAutomaton& a_;
  ValueId empty_;
  std::vector<std::vector<std::size_t>> ops_;
  std::vector<std::vector<std::pair<LetterId, State>>> letters_;
  std::vector<bool> is_final_;
  std::unordered_map<std::vector<ValueId>, std::uint32_t, VectorHash> assignment_ids_;
  std::vector<const std::vector<ValueId>*> assignments_;
};

}  // namespace

RegisterAutomaton compile_rem(const RemExpr& e) { return Compiler().run(e); }

NodeRelation eval_rem_query(const DataGraph& g, const RegisterAutomaton& a) {
  return ProductSearch(g, a).run(std::numeric_limits<std::size_t>::max());
}

NodeRelation eval_rem_query(const DataGraph& g, const RemExpr& e) {
  return eval_rem_query(g, compile_rem(e));
}

NodeRelation eval_rem_bounded(const DataGraph& g, const RemExpr& e, std::size_t max_letters) {
  const RegisterAutomaton a = compile_rem(e);
  return ProductSearch(g, a).run(max_letters);
}

NodeRelation eval_rpq(const DataGraph& g, const RemExpr& e) {
  if (!is_plain(e)) throw Error("an RPQ may not use register stores or conditions");
  return eval_rem_query(g, e);
}

}  // namespace graphdef
