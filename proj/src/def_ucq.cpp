#include "graphdef/def_ucq.hpp"

#include <algorithm>
#include <functional>

namespace graphdef {

namespace {

class HomSearch {
 public:
  HomSearch(const DataGraph& g, const HomSearchOptions& options) : g_(g), options_(options) {
    const std::size_t n = g.node_count();
    closing_edges_.resize(n);
    closing_pairs_.resize(n);
    for (const auto& e : g.edges()) closing_edges_[std::max(e.from, e.to)].push_back(e);
    const BitMatrix reach = edge_matrix(g).transitive_closure();
    for (const auto& [u, v] : reach.pairs()) {
      if (u != v) closing_pairs_[std::max(u, v)].push_back({u, v});
    }
    h_.assign(n, 0);
  }

  /// Calls visit on each homomorphism in lexicographic order until it returns
  /// false. Throws BudgetExceeded past the step budget.
  void run(const std::function<bool(const GraphHomomorphism&)>& visit) {
    visit_ = &visit;
    if (g_.node_count() == 0) {
      (*visit_)(h_);
      return;
    }
    extend(0);
  }

  std::size_t steps() const { return steps_; }

 private:
  bool consistent(NodeId x) const {
    for (const auto& e : closing_edges_[x]) {
      if (!g_.has_edge(h_[e.from], e.letter, h_[e.to])) return false;
    }
    for (const auto& [u, v] : closing_pairs_[x]) {
      if (g_.same_value(u, v) != g_.same_value(h_[u], h_[v])) return false;
    }
    return true;
  }

  // Returns false once the visitor asked to stop.
  bool extend(NodeId x) {
    for (NodeId image = 0; image < g_.node_count(); ++image) {
      if (++steps_ > options_.max_steps) {
        throw BudgetExceeded("homomorphism search exceeded " + std::to_string(options_.max_steps) + " steps");
      }
      h_[x] = image;
      if (!consistent(x)) continue;
      if (x + 1 == g_.node_count()) {
        if (!(*visit_)(h_)) return false;
      } else if (!extend(x + 1)) {
        return false;
      }
    }
    return true;
  }

  const DataGraph& g_;
  HomSearchOptions options_;
  std::vector<std::vector<Edge>> closing_edges_;
  std::vector<std::vector<std::pair<NodeId, NodeId>>> closing_pairs_;
  GraphHomomorphism h_;
  const std::function<bool(const GraphHomomorphism&)>* visit_ = nullptr;
  std::size_t steps_ = 0;
};

std::string var(NodeId v) { return "x" + std::to_string(v + 1); }

}  // namespace

ReachablePairs reachable_pairs(const DataGraph& g) {
  const BitMatrix reach = edge_matrix(g).transitive_closure();
  const BitMatrix same = same_value_matrix(g);
  BitMatrix differ = reach;
  for (const auto& [u, v] : same.pairs()) differ.reset(u, v);
  return {NodeRelation::from_matrix(reach & same), NodeRelation::from_matrix(std::move(differ))};
}

bool is_homomorphism(const DataGraph& g, const GraphHomomorphism& h) {
  if (h.size() != g.node_count()) return false;
  for (auto image : h) {
    if (image >= g.node_count()) return false;
  }
  for (const auto& e : g.edges()) {
    if (!g.has_edge(h[e.from], e.letter, h[e.to])) return false;
  }
  const BitMatrix reach = edge_matrix(g).transitive_closure();
  for (const auto& [u, v] : reach.pairs()) {
    if (g.same_value(u, v) != g.same_value(h[u], h[v])) return false;
  }
  return true;
}

std::vector<GraphHomomorphism> enumerate_homomorphisms(const DataGraph& g, const HomSearchOptions& options) {
  std::vector<GraphHomomorphism> out;
  HomSearch search(g, options);
  search.run([&](const GraphHomomorphism& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

UcqReport decide_ucrdpq(const DataGraph& g, const NodeRelation& s, const HomSearchOptions& options) {
  if (s.arity() == 0) throw Error("UCRDPQ definability needs a relation of arity at least 1");
  if (s.node_count() != g.node_count()) throw Error("relation and graph disagree on the node count");
  UcqReport report;
  report.relation = s;
  const auto tuples = s.tuples();
  HomSearch search(g, options);
  try {
    search.run([&](const GraphHomomorphism& h) {
      for (const auto& t : tuples) {
        Tuple image;
        for (auto v : t) image.push_back(h[v]);
        if (!s.contains(image)) {
          report.counterexample = UcqCounterexample{h, t, std::move(image)};
          return false;
        }
      }
      return true;
    });
  } catch (const BudgetExceeded& e) {
    report.decision = Decision::ResourceExhausted;
    report.message = e.what();
    report.steps = search.steps();
    return report;
  }
  report.steps = search.steps();
  report.decision = report.counterexample ? Decision::NotDefinable : Decision::Definable;
  return report;
}

Ucrdpq synthesize_ucrdpq(const DataGraph& g, const NodeRelation& s, const HomSearchOptions& options) {
  const UcqReport report = decide_ucrdpq(g, s, options);
  if (report.decision != Decision::Definable) {
    throw Error("cannot synthesize a UCRDPQ for a relation that is " + std::string(to_string(report.decision)));
  }
  std::vector<PathAtom> phi;
  std::vector<bool> used(g.node_count(), false);
  for (const auto& e : g.edges()) {
    phi.push_back({var(e.from), ReeExpr::sym(g.letter_name(e.letter)), var(e.to)});
    used[e.from] = used[e.to] = true;
  }
  if (g.letter_count() > 0) {
    ReeExpr sigma = ReeExpr::sym(g.letter_name(0));
    for (LetterId a = 1; a < g.letter_count(); ++a) sigma = ReeExpr::either(std::move(sigma), ReeExpr::sym(g.letter_name(a)));
    const ReeExpr path = ReeExpr::plus(std::move(sigma));
    const ReachablePairs rp = reachable_pairs(g);
    for (const auto& [u, v] : rp.eq.matrix().pairs()) phi.push_back({var(u), ReeExpr::eq(path), var(v)});
    for (const auto& [u, v] : rp.neq.matrix().pairs()) phi.push_back({var(u), ReeExpr::neq(path), var(v)});
  }
  // A node without edges still needs its variable bound to some node.
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!used[v]) phi.push_back({var(v), ReeExpr::eps(), var(v)});
  }
  Ucrdpq out;
  out.arity = s.arity();
  for (const auto& t : s.tuples()) {
    Crdpq member;
    for (auto v : t) member.answer.push_back(var(v));
    member.atoms = phi;
    out.members.push_back(std::move(member));
  }
  if (!(eval_ucrdpq(g, out) == s)) throw Error("synthesized UCRDPQ does not define the relation");
  return out;
}

}  // namespace graphdef
