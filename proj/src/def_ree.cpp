#include "graphdef/def_ree.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "graphdef/eval.hpp"

namespace graphdef {

namespace {

bool is_covered(const std::vector<BitMatrix>& gens, const std::vector<unsigned>& levels, unsigned level,
                const BitMatrix& s) {
  BitMatrix acc(s.dimension());
  bool any = false;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (levels[i] > level || !gens[i].is_subset_of(s)) continue;
    if (s.empty()) return gens[i].empty();
    acc |= gens[i];
    any = true;
  }
  return any && acc == s;
}

class Closure {
 public:
  Closure(std::vector<BitMatrix>& gens, std::vector<ReeProvenance>& prov, std::vector<unsigned>& levels,
          const LevelOptions& options)
      : gens_(gens), prov_(prov), levels_(levels), options_(options) {}

  // Adds r unless it is a union of known generators; returns true if added.
  bool add(BitMatrix r, ReeProvenance p, unsigned level) {
    if (covered(r)) return false;
    if (gens_.size() >= options_.max_relations) {
      throw BudgetExceeded("level closure exceeded " + std::to_string(options_.max_relations) + " relations");
    }
    gens_.push_back(std::move(r));
    prov_.push_back(p);
    levels_.push_back(level);
    return true;
  }

  void compose_close(unsigned level) {
    for (; next_ < gens_.size(); ++next_) {
      const auto i = static_cast<std::uint32_t>(next_);
      for (std::uint32_t j = 0; j <= i; ++j) {
        add(gens_[i].compose(gens_[j]), {ReeProvenance::Kind::Compose, 0, i, j}, level);
        if (j != i) add(gens_[j].compose(gens_[i]), {ReeProvenance::Kind::Compose, 0, j, i}, level);
      }
    }
  }

  // Restricts every generator not restricted yet; returns true if anything new appeared.
  bool restrict_all(unsigned level, const BitMatrix& same, const BitMatrix& differ) {
    const std::size_t before = gens_.size();
    const std::size_t end = gens_.size();
    for (; restricted_ < end; ++restricted_) {
      const auto i = static_cast<std::uint32_t>(restricted_);
      const std::size_t source_size = gens_[i].count();
      for (auto kind : {ReeProvenance::Kind::Eq, ReeProvenance::Kind::Neq}) {
        BitMatrix r = gens_[i] & (kind == ReeProvenance::Kind::Eq ? same : differ);
        if (add(std::move(r), {kind, 0, i, 0}, level) && gens_.back().count() >= source_size) {
          throw Error("internal: a new restriction is not smaller than its source");
        }
      }
    }
    return gens_.size() != before;
  }

 private:
  bool covered(const BitMatrix& r) const {
    return is_covered(gens_, levels_, std::numeric_limits<unsigned>::max(), r);
  }

  std::vector<BitMatrix>& gens_;
  std::vector<ReeProvenance>& prov_;
  std::vector<unsigned>& levels_;
  LevelOptions options_;
  std::size_t next_ = 0;
  std::size_t restricted_ = 0;
};

}  // namespace

LevelSet level_closure(const DataGraph& g, unsigned max_level, const LevelOptions& options) {
  LevelSet out;
  const std::size_t n = g.node_count();
  out.n_ = n;
  out.letters_ = g.alphabet();
  Closure c(out.generators_, out.provenance_, out.levels_, options);
  c.add(BitMatrix::identity(n), {ReeProvenance::Kind::Eps, 0, 0, 0}, 0);
  for (LetterId a = 0; a < g.letter_count(); ++a) {
    c.add(letter_matrix(g, a), {ReeProvenance::Kind::Letter, a, 0, 0}, 0);
  }
  c.compose_close(0);
  const BitMatrix same = same_value_matrix(g);
  BitMatrix differ = BitMatrix::full(n);
  for (const auto& [u, v] : same.pairs()) differ.reset(u, v);
  out.last_level_ = 0;
  out.stabilized_ = false;
  for (unsigned level = 1; level <= max_level; ++level) {
    const bool grew = c.restrict_all(level, same, differ);
    c.compose_close(level);
    out.last_level_ = level;
    if (!grew) {
      out.stabilized_ = true;
      if (options.stop_at_fixpoint) break;
    }
  }
  return out;
}

std::optional<unsigned> LevelSet::height(const BitMatrix& s) const {
  for (unsigned level = 0; level <= last_level_; ++level) {
    if (is_covered(generators_, levels_, level, s)) return level;
  }
  return std::nullopt;
}

std::optional<std::vector<std::uint32_t>> LevelSet::cover(const BitMatrix& s) const {
  const auto h = height(s);
  if (!h) return std::nullopt;
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 0; i < generators_.size(); ++i) {
    if (levels_[i] <= *h && generators_[i].is_subset_of(s)) candidates.push_back(i);
  }
  if (s.empty()) {
    for (auto i : candidates) {
      if (generators_[i].empty()) return std::vector<std::uint32_t>{i};
    }
    return std::nullopt;
  }
  std::vector<std::uint32_t> out;
  BitMatrix acc(n_);
  while (!(acc == s)) {
    std::size_t best_gain = 0;
    std::uint32_t best = 0;
    for (auto i : candidates) {
      const std::size_t gain = (generators_[i] | acc).count() - acc.count();
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    out.push_back(best);
    acc |= generators_[best];
  }
  std::sort(out.begin(), out.end());
  return out;
}

ReeExpr LevelSet::expression(std::uint32_t generator) const {
  const auto& p = provenance_.at(generator);
  switch (p.kind) {
    case ReeProvenance::Kind::Eps: return ReeExpr::eps();
    case ReeProvenance::Kind::Letter: return ReeExpr::sym(letters_[p.letter]);
    case ReeProvenance::Kind::Compose: return ReeExpr::concat(expression(p.left), expression(p.right));
    case ReeProvenance::Kind::Eq: return ReeExpr::eq(expression(p.left));
    case ReeProvenance::Kind::Neq: return ReeExpr::neq(expression(p.left));
  }
  return ReeExpr::eps();
}

std::vector<BitMatrix> LevelSet::materialize(unsigned level, std::size_t limit) const {
  std::unordered_set<BitMatrix, BitMatrixHash> seen;
  std::vector<BitMatrix> out;
  std::vector<std::uint32_t> base;
  for (std::uint32_t i = 0; i < generators_.size(); ++i) {
    if (levels_[i] <= level) base.push_back(i);
  }
  auto push = [&](const BitMatrix& m) {
    if (!seen.insert(m).second) return;
    if (seen.size() > limit) throw BudgetExceeded("materialized closure exceeds the limit");
    out.push_back(m);
  };
  for (auto i : base) push(generators_[i]);
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (auto i : base) {
      BitMatrix u = out[k] | generators_[i];
      push(u);
    }
  }
  std::sort(out.begin(), out.end(), [](const BitMatrix& a, const BitMatrix& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a.pairs() < b.pairs();
  });
  return out;
}

ReeReport decide_ree(const DataGraph& g, const NodeRelation& s, const LevelOptions& options) {
  if (s.arity() != 2) throw Error("REE definability needs a binary relation");
  if (s.node_count() != g.node_count()) throw Error("relation and graph disagree on the node count");
  ReeReport report;
  report.relation = s;
  const auto n = static_cast<unsigned>(g.node_count());
  try {
    report.levels = level_closure(g, n * n, options);
  } catch (const BudgetExceeded& e) {
    report.decision = Decision::ResourceExhausted;
    report.message = e.what();
    return report;
  }
  report.level = report.levels.height(s.matrix());
  report.decision = report.level ? Decision::Definable : Decision::NotDefinable;
  return report;
}

ReeExpr synthesize_ree(const DataGraph& g, const ReeReport& report) {
  if (report.decision != Decision::Definable) {
    throw Error("cannot synthesize an REE for a relation that is " + std::string(to_string(report.decision)));
  }
  const auto parts = report.levels.cover(report.relation.matrix());
  if (!parts || parts->empty()) throw Error("internal: definable relation has no generator cover");
  ReeExpr out = report.levels.expression(parts->front());
  for (std::size_t i = 1; i < parts->size(); ++i) {
    out = ReeExpr::either(std::move(out), report.levels.expression((*parts)[i]));
  }
  if (!(eval_ree_query(g, out) == report.relation)) {
    throw Error("synthesized REE " + to_string(out) + " does not define the relation");
  }
  return out;
}

}  // namespace graphdef
