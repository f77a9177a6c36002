#include "graphdef/def_rem.hpp"

#include <algorithm>
#include <limits>
#include <span>

#include "graphdef/assign.hpp"
#include "graphdef/eval.hpp"

namespace graphdef {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint32_t x) {
  h ^= x;
  h *= 0x100000001b3ULL;
  return h ^ (h >> 29);
}

// Interns fixed- or variable-length uint32 sequences; ids are dense and in
// insertion order.
class Interner {
 public:
  std::uint32_t size() const { return static_cast<std::uint32_t>(starts_.size()); }

  std::span<const std::uint32_t> get(std::uint32_t id) const {
    const std::size_t b = starts_[id];
    const std::size_t e = id + 1 < starts_.size() ? starts_[id + 1] : data_.size();
    return {data_.data() + b, e - b};
  }

  std::pair<std::uint32_t, bool> insert(std::span<const std::uint32_t> t) {
    if ((starts_.size() + 1) * 2 > table_.size()) grow();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : t) h = mix(h, x);
    const std::size_t mask = table_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      const std::uint32_t slot = table_[i];
      if (slot == 0) {
        const auto id = static_cast<std::uint32_t>(starts_.size());
        table_[i] = id + 1;
        starts_.push_back(data_.size());
        hashes_.push_back(h);
        data_.insert(data_.end(), t.begin(), t.end());
        return {id, true};
      }
      const std::uint32_t id = slot - 1;
      if (hashes_[id] == h) {
        const auto other = get(id);
        if (other.size() == t.size() && std::equal(t.begin(), t.end(), other.begin())) return {id, false};
      }
    }
  }

 private:
  void grow() {
    std::vector<std::uint32_t> table(std::max<std::size_t>(64, table_.size() * 2), 0);
    const std::size_t mask = table.size() - 1;
    for (std::uint32_t id = 0; id < starts_.size(); ++id) {
      std::size_t i = hashes_[id] & mask;
      while (table[i] != 0) i = (i + 1) & mask;
      table[i] = id + 1;
    }
    table_ = std::move(table);
  }

  std::vector<std::uint32_t> data_;
  std::vector<std::size_t> starts_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> table_;
};

// Breadth-first search over subset tuples. A slot (sorted set of states) is
// interned once and its successors under each (letter, store mask) are
// memoized for all atomic types, so a tuple is just n slot ids.
class WitnessSearch {
 public:
  WitnessSearch(const AssignmentGraph& tg, const NodeRelation& s, const RemSearchOptions& options,
                WitnessReport& report)
      : tg_(tg),
        g_(tg.graph()),
        options_(options),
        report_(report),
        n_(g_.node_count()),
        words_((n_ + 63) / 64),
        masks_(1U << tg.registers()) {
    const BitMatrix reach = edge_matrix(g_).transitive_closure() | BitMatrix::identity(n_);
    s_rows_.assign(n_ * words_, 0);
    reach_rows_.assign(n_ * words_, 0);
    for (NodeId u = 0; u < n_; ++u)
      for (NodeId v = 0; v < n_; ++v) {
        if (s.matrix().test(u, v)) s_rows_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
        if (reach.test(u, v)) reach_rows_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
      }
    for (const auto& [u, v] : s.matrix().pairs()) pending_.push_back({u, v});
    found_.resize(pending_.size());
    build_tables();
    intern_slot({});  // id 0 is the empty slot
  }

  /// Returns false when the budget ran out.
  bool run_pairs() {
    return bfs([this](const std::uint32_t* t, std::uint32_t id) { return check(t, id); },
               [this](const std::uint32_t* t) { return useful(t); }, false);
  }

  /// Searches for the all-empty tuple; returns false when the budget ran out.
  bool run_empty() {
    return bfs(
        [this](const std::uint32_t* t, std::uint32_t id) {
          if (!std::all_of(t, t + n_, [](std::uint32_t x) { return x == 0; })) return false;
          report_.empty_witness = trace(id);
          return true;
        },
        [](const std::uint32_t*) { return true; }, true);
  }

  void finish() {
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      if (!found_[i]) {
        report_.decision = Decision::NotDefinable;
        report_.failing_pair = pending_[i];
        report_.witnesses.clear();
        return;
      }
      report_.witnesses.push_back({pending_[i].first, pending_[i].second, *found_[i]});
    }
    report_.decision = Decision::Definable;
  }

 private:
  struct Visit {
    std::uint32_t parent;
    BlockLabel label;
  };

  static constexpr std::uint32_t kUnknown = std::numeric_limits<std::uint32_t>::max();

  void build_tables() {
    const std::size_t a_count = tg_.assignment_count();
    const unsigned k = tg_.registers();
    const std::size_t delta = g_.value_count();
    if (a_count * masks_ * delta > (std::size_t{1} << 26)) {
      throw BudgetExceeded("register tables for k = " + std::to_string(k) + " exceed the memory guard");
    }
    std::vector<std::vector<ValueId>> regs(a_count);
    for (std::size_t a = 0; a < a_count; ++a) regs[a] = tg_.decode(static_cast<StateId>(a)).registers;
    type_.assign(a_count * delta, 0);
    for (std::size_t a = 0; a < a_count; ++a)
      for (std::size_t d = 0; d < delta; ++d)
        for (unsigned r = 0; r < k; ++r)
          if (regs[a][r] == d) type_[a * delta + d] |= 1U << r;
    store_.assign(a_count * masks_ * delta, 0);
    for (std::size_t a = 0; a < a_count; ++a)
      for (std::size_t m = 0; m < masks_; ++m)
        for (std::size_t d = 0; d < delta; ++d) {
          AssignState st{0, regs[a]};
          for (unsigned r = 0; r < k; ++r)
            if (m >> r & 1U) st.registers[r] = static_cast<ValueId>(d);
          store_[(a * masks_ + m) * delta + d] = tg_.encode(st);
        }
  }

  std::uint32_t intern_slot(std::span<const std::uint32_t> states) {
    const auto [id, fresh] = slots_.insert(states);
    if (fresh) {
      slot_nodes_.resize(slot_nodes_.size() + words_, 0);
      for (StateId st : states) {
        const NodeId v = tg_.node_of(st);
        slot_nodes_[id * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
      }
      memo_.resize(memo_.size() + g_.letter_count() * masks_ * masks_, kUnknown);
    }
    return id;
  }

  // Successor slot ids of `slot` for every type, under (letter, store).
  const std::uint32_t* successors(std::uint32_t slot, LetterId a, std::uint32_t store) {
    const std::size_t at = ((static_cast<std::size_t>(slot) * g_.letter_count() + a) * masks_ + store) * masks_;
    if (memo_[at] != kUnknown) return &memo_[at];
    const std::size_t a_count = tg_.assignment_count();
    const std::size_t delta = g_.value_count();
    scratch_.resize(masks_);
    for (auto& p : scratch_) p.clear();
    for (StateId st : slots_.get(slot)) {
      const NodeId v = static_cast<NodeId>(st / a_count);
      const std::uint32_t stored = store_[((st % a_count) * masks_ + store) * delta + g_.value_of(v)];
      for (NodeId w : g_.successors(v, a))
        scratch_[type_[stored * delta + g_.value_of(w)]].push_back(static_cast<StateId>(w * a_count + stored));
    }
    std::uint32_t ids[64];
    for (std::uint32_t type = 0; type < masks_; ++type) {
      auto& p = scratch_[type];
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
      ids[type] = intern_slot(p);
    }
    // intern_slot may have grown memo_.
    std::copy(ids, ids + masks_, memo_.begin() + static_cast<std::ptrdiff_t>(at));
    return &memo_[at];
  }

  bool slot_within(std::uint32_t slot, const std::vector<std::uint64_t>& rows, NodeId row) const {
    for (std::size_t w = 0; w < words_; ++w)
      if (slot_nodes_[slot * words_ + w] & ~rows[row * words_ + w]) return false;
    return true;
  }

  bool slot_has(std::uint32_t slot, NodeId v) const {
    return (slot_nodes_[slot * words_ + v / 64] >> (v % 64) & 1U) != 0;
  }

  bool slot_meets(std::uint32_t slot, const std::vector<std::uint64_t>& rows, NodeId column) const {
    // Some node q of the slot has rows[q] containing `column`.
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = slot_nodes_[slot * words_ + w];
      while (bits) {
        const auto q = static_cast<NodeId>(w * 64 + static_cast<unsigned>(__builtin_ctzll(bits)));
        if (rows[q * words_ + column / 64] >> (column % 64) & 1U) return true;
        bits &= bits - 1;
      }
    }
    return false;
  }

  // True when every pair has a witness.
  bool check(const std::uint32_t* t, std::uint32_t id) {
    for (NodeId i = 0; i < n_; ++i)
      if (!slot_within(t[i], s_rows_, i)) return false;
    bool all = true;
    for (std::size_t p = 0; p < pending_.size(); ++p) {
      if (found_[p]) continue;
      const auto [u, v] = pending_[p];
      if (slot_has(t[u], v)) {
        found_[p] = trace(id);
      } else {
        all = false;
      }
    }
    return all;
  }

  // Some pending pair can still be witnessed from an extension of t.
  bool useful(const std::uint32_t* t) const {
    for (std::size_t p = 0; p < pending_.size(); ++p) {
      if (found_[p]) continue;
      const auto [u, v] = pending_[p];
      if (slot_meets(t[u], reach_rows_, v)) return true;
    }
    return false;
  }

  BasicRem trace(std::uint32_t id) const {
    BasicRem out;
    while (id != 0) {
      out.blocks.push_back(visits_[id].label.to_block(g_, tg_.registers()));
      id = visits_[id].parent;
    }
    std::reverse(out.blocks.begin(), out.blocks.end());
    return out;
  }

  template <class Accept, class Useful>
  bool bfs(Accept&& accept, Useful&& is_useful, bool keep_empty) {
    Interner tuples;
    std::vector<std::uint32_t> start(n_);
    const SubsetTuple init = tg_.initial_tuple();
    for (NodeId i = 0; i < n_; ++i) start[i] = intern_slot(init.slots[i]);
    tuples.insert(start);
    visits_.push_back({0, {}});
    report_.tuples_visited = 1;
    if (accept(start.data(), 0)) return true;

    std::vector<std::uint32_t> current(n_);
    std::vector<std::uint32_t> out(static_cast<std::size_t>(masks_) * n_);
    std::vector<const std::uint32_t*> succ(n_);
    for (std::uint32_t id = 0; id < tuples.size(); ++id) {
      const auto view = tuples.get(id);
      std::copy(view.begin(), view.end(), current.begin());
      if (!is_useful(current.data())) continue;
      for (LetterId a = 0; a < g_.letter_count(); ++a) {
        for (std::uint32_t store = 0; store < masks_; ++store) {
          for (NodeId i = 0; i < n_; ++i) {
            const std::uint32_t* row = successors(current[i], a, store);
            for (std::uint32_t type = 0; type < masks_; ++type) out[type * n_ + i] = row[type];
          }
          for (std::uint32_t type = 0; type < masks_; ++type) {
            const std::uint32_t* t = &out[type * n_];
            if (!keep_empty && std::all_of(t, t + n_, [](std::uint32_t x) { return x == 0; })) continue;
            const auto [next, fresh] = tuples.insert({t, n_});
            if (!fresh) continue;
            if (tuples.size() > options_.max_tuples) {
              report_.tuples_visited = tuples.size();
              return false;
            }
            visits_.push_back({id, {store, a, type}});
            if (accept(t, next)) {
              report_.tuples_visited = tuples.size();
              return true;
            }
          }
        }
      }
    }
    report_.tuples_visited = tuples.size();
    return true;
  }

  const AssignmentGraph& tg_;
  const DataGraph& g_;
  RemSearchOptions options_;
  WitnessReport& report_;
  std::size_t n_;
  std::size_t words_;
  std::uint32_t masks_;
  std::vector<std::uint64_t> s_rows_, reach_rows_;
  std::vector<std::pair<NodeId, NodeId>> pending_;
  std::vector<std::optional<BasicRem>> found_;
  std::vector<Visit> visits_;
  std::vector<std::uint32_t> type_;   // [assignment][value] -> type mask
  std::vector<std::uint32_t> store_;  // [assignment][store mask][value] -> assignment
  Interner slots_;
  std::vector<std::uint64_t> slot_nodes_;  // node set of each slot, words_ per slot
  std::vector<std::uint32_t> memo_;        // [slot][letter][store][type] -> slot
  std::vector<std::vector<StateId>> scratch_;
};

}  // namespace

WitnessReport find_witnesses(const DataGraph& g, const NodeRelation& s, unsigned k,
                             const RemSearchOptions& options) {
  if (s.arity() != 2) throw Error("REM definability needs a binary relation");
  if (s.node_count() != g.node_count()) throw Error("relation and graph disagree on the node count");
  WitnessReport report;
  report.registers = k;
  report.relation = s;
  if (s.empty() && (k >= 1 || g.node_count() == 0)) {
    report.decision = Decision::Definable;
    return report;
  }
  std::optional<AssignmentGraph> tg;
  std::optional<WitnessSearch> search;
  try {
    tg.emplace(g, k);
    search.emplace(*tg, s, options, report);
  } catch (const BudgetExceeded& e) {
    report.decision = Decision::ResourceExhausted;
    report.message = e.what();
    return report;
  }
  const bool completed = s.empty() ? search->run_empty() : search->run_pairs();
  if (!completed) {
    report.decision = Decision::ResourceExhausted;
    report.message = "visited more than " + std::to_string(options.max_tuples) + " subset tuples";
    report.empty_witness.reset();
    return report;
  }
  if (s.empty()) {
    report.decision = report.empty_witness ? Decision::Definable : Decision::NotDefinable;
  } else {
    search->finish();
  }
  return report;
}

WitnessReport decide_k_rem(const DataGraph& g, const NodeRelation& s, unsigned k,
                           const RemSearchOptions& options) {
  return find_witnesses(g, s, k, options);
}

WitnessReport decide_rem(const DataGraph& g, const NodeRelation& s, const RemSearchOptions& options) {
  return find_witnesses(g, s, static_cast<unsigned>(g.value_count()), options);
}

RemExpr synthesize_rem(const DataGraph& g, const WitnessReport& report) {
  if (report.decision != Decision::Definable) {
    throw Error("cannot synthesize an REM for a relation that is " + std::string(to_string(report.decision)));
  }
  RemExpr out;
  if (report.relation.empty()) {
    if (report.empty_witness) {
      out = report.empty_witness->to_expr();
    } else {
      const std::string letter = g.letter_count() ? g.letter_name(0) : "a";
      out = RemExpr::test(RemExpr::sym(letter), Condition::conj(Condition::reg_eq(1), Condition::reg_neq(1)));
    }
  } else {
    std::vector<RemExpr> parts;
    for (const auto& w : report.witnesses) {
      RemExpr e = w.witness.to_expr();
      if (std::find(parts.begin(), parts.end(), e) == parts.end()) parts.push_back(std::move(e));
    }
    out = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) out = RemExpr::either(std::move(out), std::move(parts[i]));
  }
  if (!(eval_rem_query(g, out) == report.relation)) {
    throw Error("synthesized REM " + to_string(out) + " does not define the relation");
  }
  return out;
}

}  // namespace graphdef
