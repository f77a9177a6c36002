#include "graphdef/assign.hpp"

#include <algorithm>
#include <sstream>

namespace graphdef {

RemBlock BlockLabel::to_block(const DataGraph& g, unsigned k) const {
  RemBlock b;
  for (unsigned r = 1; r <= k; ++r)
    if (store_mask >> (r - 1) & 1U) b.store.push_back(r);
  b.letter = g.letter_name(letter);
  for (unsigned r = 1; r <= k; ++r) {
    Condition atom = (type_mask >> (r - 1) & 1U) ? Condition::reg_eq(r) : Condition::reg_neq(r);
    b.condition = r == 1 ? std::move(atom) : Condition::conj(std::move(b.condition), std::move(atom));
  }
  return b;
}

bool SubsetTuple::all_empty() const {
  return std::all_of(slots.begin(), slots.end(), [](const auto& s) { return s.empty(); });
}

std::vector<std::uint32_t> SubsetTuple::key() const {
  std::vector<std::uint32_t> out;
  for (const auto& s : slots) {
    out.push_back(static_cast<std::uint32_t>(s.size()));
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

AssignmentGraph::AssignmentGraph(const DataGraph& g, unsigned k)
    : g_(&g), k_(k), base_(static_cast<std::uint32_t>(g.value_count() + 1)) {
  std::uint64_t count = 1;
  for (unsigned r = 0; r < k; ++r) {
    pow_.push_back(static_cast<std::uint32_t>(count));
    count *= base_;
    if (count * std::max<std::size_t>(1, g.node_count()) > std::numeric_limits<std::uint32_t>::max()) {
      throw BudgetExceeded("assignment graph with " + std::to_string(k) + " registers over " +
                           std::to_string(g.value_count()) + " data values is too large");
    }
  }
  if (k >= 32) throw BudgetExceeded("at most 31 registers are supported");
  assignments_ = static_cast<std::uint32_t>(count);
}

StateId AssignmentGraph::encode(const AssignState& s) const {
  if (s.registers.size() != k_) throw Error("assignment width does not match the register count");
  std::uint32_t a = 0;
  for (unsigned r = 0; r < k_; ++r) {
    const ValueId d = s.registers[r] == kEmptyRegister ? base_ - 1 : s.registers[r];
    a += d * pow_[r];
  }
  return static_cast<StateId>(s.node * assignments_ + a);
}

AssignState AssignmentGraph::decode(StateId id) const {
  AssignState s;
  s.node = node_of(id);
  const std::uint32_t a = id % assignments_;
  for (unsigned r = 0; r < k_; ++r) {
    const std::uint32_t d = digit(a, r);
    s.registers.push_back(d == base_ - 1 ? kEmptyRegister : d);
  }
  return s;
}

std::uint32_t AssignmentGraph::store(std::uint32_t assignment, std::uint32_t mask, ValueId d) const {
  for (unsigned r = 0; r < k_; ++r) {
    if (mask >> r & 1U) assignment = assignment - digit(assignment, r) * pow_[r] + d * pow_[r];
  }
  return assignment;
}

std::uint32_t AssignmentGraph::type_of(std::uint32_t assignment, ValueId d) const {
  std::uint32_t t = 0;
  for (unsigned r = 0; r < k_; ++r)
    if (digit(assignment, r) == d) t |= 1U << r;
  return t;
}

std::vector<BlockLabel> AssignmentGraph::labels() const {
  std::vector<BlockLabel> out;
  const std::uint32_t masks = 1U << k_;
  for (LetterId a = 0; a < g_->letter_count(); ++a)
    for (std::uint32_t store_mask = 0; store_mask < masks; ++store_mask)
      for (std::uint32_t type_mask = 0; type_mask < masks; ++type_mask)
        out.push_back({store_mask, a, type_mask});
  return out;
}

std::vector<StateId> AssignmentGraph::successors(StateId s, const BlockLabel& label) const {
  std::vector<StateId> out;
  const NodeId v = node_of(s);
  const std::uint32_t stored = store(s % assignments_, label.store_mask, g_->value_of(v));
  for (NodeId next : g_->successors(v, label.letter)) {
    if (type_of(stored, g_->value_of(next)) == label.type_mask) {
      out.push_back(next * assignments_ + stored);
    }
  }
  return out;
}

SubsetTuple AssignmentGraph::initial_tuple() const {
  SubsetTuple t;
  const std::uint32_t empty = assignments_ - 1;  // every digit is base_ - 1
  for (NodeId v = 0; v < g_->node_count(); ++v) t.slots.push_back({v * assignments_ + empty});
  return t;
}

SubsetTuple AssignmentGraph::step(const SubsetTuple& t, const BlockLabel& label) const {
  SubsetTuple out;
  out.slots.resize(t.slots.size());
  for (std::size_t i = 0; i < t.slots.size(); ++i) {
    auto& slot = out.slots[i];
    for (StateId s : t.slots[i]) {
      const auto next = successors(s, label);
      slot.insert(slot.end(), next.begin(), next.end());
    }
    std::sort(slot.begin(), slot.end());
    slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
  }
  return out;
}

void AssignmentGraph::step_all_types(const SubsetTuple& t, LetterId letter, std::uint32_t store_mask,
                                     std::vector<SubsetTuple>& out) const {
  const std::size_t types = std::size_t{1} << k_;
  out.resize(types);
  for (auto& o : out) {
    o.slots.resize(t.slots.size());
    for (auto& s : o.slots) s.clear();
  }
  for (std::size_t i = 0; i < t.slots.size(); ++i) {
    for (StateId s : t.slots[i]) {
      const NodeId v = node_of(s);
      const std::uint32_t stored = store(s % assignments_, store_mask, g_->value_of(v));
      for (NodeId next : g_->successors(v, letter)) {
        out[type_of(stored, g_->value_of(next))].slots[i].push_back(next * assignments_ + stored);
      }
    }
  }
  for (auto& o : out) {
    for (auto& slot : o.slots) {
      std::sort(slot.begin(), slot.end());
      slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
    }
  }
}

std::vector<AssignState> AssignmentGraph::run_reach(const AssignState& s, const BasicRem& e) const {
  std::vector<StateId> current{encode(s)};
  for (const auto& block : e.blocks) {
    std::uint32_t mask = 0;
    for (auto r : block.store) {
      if (r == 0 || r > k_) throw Error("block stores into r" + std::to_string(r) + " beyond k");
      mask |= 1U << (r - 1);
    }
    if (block.condition.max_register() > k_) throw Error("block condition uses a register beyond k");
    std::vector<StateId> next;
    const auto letter = g_->find_letter(block.letter);
    if (letter) {
      for (StateId st : current) {
        const NodeId v = node_of(st);
        const std::uint32_t stored = store(st % assignments_, mask, g_->value_of(v));
        for (NodeId w : g_->successors(v, *letter)) {
          const ValueId d = g_->value_of(w);
          if (evaluate(block.condition, [&](unsigned r) { return digit(stored, r - 1) == d; })) {
            next.push_back(w * assignments_ + stored);
          }
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
  }
  std::vector<AssignState> out;
  for (StateId st : current) out.push_back(decode(st));
  return out;
}

std::string AssignmentGraph::dump() const {
  std::ostringstream os;
  auto show = [&](StateId id) {
    const AssignState s = decode(id);
    std::string out = "(" + g_->node_name(s.node) + ",(";
    for (unsigned r = 0; r < k_; ++r) {
      if (r) out += ",";
      out += s.registers[r] == kEmptyRegister ? "_" : g_->value_name(s.registers[r]);
    }
    return out + "))";
  };
  const auto all = labels();
  for (StateId s = 0; s < state_count(); ++s) {
    for (const auto& l : all) {
      for (StateId t : successors(s, l)) {
        os << show(s) << " -[" << BasicRem{{l.to_block(*g_, k_)}}.to_string() << "]-> " << show(t) << "\n";
      }
    }
  }
  return os.str();
}

std::vector<AssignState> successors(const DataGraph& g, unsigned k, const AssignState& s,
                                    const BlockLabel& label) {
  const AssignmentGraph tg(g, k);
  std::vector<AssignState> out;
  for (StateId t : tg.successors(tg.encode(s), label)) out.push_back(tg.decode(t));
  return out;
}

SubsetTuple tuple_step(const DataGraph& g, unsigned k, const SubsetTuple& t, const BlockLabel& label) {
  return AssignmentGraph(g, k).step(t, label);
}

std::vector<BlockLabel> labels(const DataGraph& g, unsigned k) { return AssignmentGraph(g, k).labels(); }

std::vector<AssignState> run_reach(const DataGraph& g, unsigned k, const AssignState& s,
                                   const BasicRem& e) {
  return AssignmentGraph(g, k).run_reach(s, e);
}

}  // namespace graphdef
