#include <algorithm>
#include <cctype>
#include <future>
#include <map>
#include <optional>

#include "graphdef/eval.hpp"

namespace graphdef {

BitMatrix ree_relation(const DataGraph& g, const ReeExpr& e) {
  using K = ReeExpr::Kind;
  const std::size_t n = g.node_count();
  switch (e.kind) {
    case K::Eps: return BitMatrix::identity(n);
    case K::Letter: {
      auto letter = g.find_letter(e.letter);
      return letter ? letter_matrix(g, *letter) : BitMatrix(n);
    }
    case K::Union: return ree_relation(g, e.args[0]) | ree_relation(g, e.args[1]);
    case K::Concat: return ree_relation(g, e.args[0]).compose(ree_relation(g, e.args[1]));
    case K::Plus: return ree_relation(g, e.args[0]).transitive_closure();
    case K::Eq: return ree_relation(g, e.args[0]) & same_value_matrix(g);
    case K::Neq: {
      BitMatrix out = ree_relation(g, e.args[0]);
      for (auto [u, v] : out.pairs())
        if (g.same_value(u, v)) out.reset(u, v);
      return out;
    }
  }
  return BitMatrix(n);
}

NodeRelation eval_ree_query(const DataGraph& g, const ReeExpr& e) {
  return NodeRelation::from_matrix(ree_relation(g, e));
}

// ---------------------------------------------------------------------------

namespace {

std::string expr_text(const PathExpr& e) {
  return std::visit([](const auto& x) { return graphdef::to_string(x); }, e);
}

bool is_rem(const PathExpr& e) { return std::holds_alternative<RemExpr>(e); }

}  // namespace

void Crdpq::validate() const {
  if (answer.empty()) throw Error("a conjunctive query needs at least one answer variable");
  if (atoms.empty()) throw Error("a conjunctive query needs at least one atom");
  for (const auto& a : atoms) {
    if (is_rem(a.expr) != is_rem(atoms.front().expr)) {
      throw Error("conjunctive query mixes REM and REE atoms");
    }
  }
  for (const auto& z : answer) {
    const bool found = std::any_of(atoms.begin(), atoms.end(),
                                   [&](const PathAtom& a) { return a.source == z || a.target == z; });
    if (!found) throw Error("answer variable '" + z + "' does not occur in any atom");
  }
}

std::string Crdpq::to_string() const {
  std::string out = "ans(";
  for (std::size_t i = 0; i < answer.size(); ++i) out += (i ? "," : "") + answer[i];
  out += ") :=";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    out += i ? " & " : " ";
    out += atoms[i].source + " -[" + expr_text(atoms[i].expr) + "]-> " + atoms[i].target;
  }
  return out;
}

void Ucrdpq::validate() const {
  for (const auto& m : members) {
    m.validate();
    if (m.arity() != arity) throw Error("union members must share one arity");
  }
}

std::string Ucrdpq::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += "|||\n";
    out += members[i].to_string() + "\n";
  }
  return out;
}

namespace {

class CrdpqParser {
 public:
  CrdpqParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  Crdpq parse() {
    Crdpq q;
    ident();  // head name, conventionally "ans"
    expect("(");
    q.answer.push_back(ident());
    while (accept(",")) q.answer.push_back(ident());
    expect(")");
    expect(":=");
    std::vector<std::pair<std::string_view, std::size_t>> texts;
    do {
      PathAtom atom;
      atom.source = ident();
      expect("-[");
      const std::size_t start = pos_;
      texts.emplace_back(bracketed(), start);
      atom.target = ident();
      q.atoms.push_back(std::move(atom));
    } while (accept("&"));
    skip_ws();
    if (pos_ != text_.size()) fail("expected '&' or end of query");
    assign_language(q, texts);
    try {
      q.validate();
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      throw InputError(e.what(), base_);
    }
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("syntax error: " + msg, base_ + pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
    }
    if (pos_ == start) fail("expected a variable name");
    return std::string(text_.substr(start, pos_ - start));
  }

  // Expression text up to the matching "]->"; conditions may nest brackets.
  std::string_view bracketed() {
    const std::size_t start = pos_;
    int depth = 1;
    for (; pos_ < text_.size(); ++pos_) {
      if (text_[pos_] == '[') {
        ++depth;
      } else if (text_[pos_] == ']' && --depth == 0) {
        if (text_.substr(pos_, 3) != "]->") fail("expected ']->'");
        auto inner = text_.substr(start, pos_ - start);
        pos_ += 3;
        return inner;
      }
    }
    fail("unterminated '-['");
  }

  void assign_language(Crdpq& q, const std::vector<std::pair<std::string_view, std::size_t>>& texts) {
    std::optional<InputError> ree_error;
    std::vector<PathExpr> parsed;
    for (const auto& [t, at] : texts) {
      try {
        parsed.emplace_back(parse_ree(t));
      } catch (const InputError& e) {
        ree_error = InputError(e.what(), base_ + at);
        break;
      }
    }
    if (!ree_error) {
      for (std::size_t i = 0; i < parsed.size(); ++i) q.atoms[i].expr = std::move(parsed[i]);
      return;
    }
    for (std::size_t i = 0; i < texts.size(); ++i) {
      try {
        q.atoms[i].expr = parse_rem(texts[i].first);
      } catch (const InputError& e) {
        const std::size_t inner = e.position() == InputError::npos ? 0 : e.position();
        throw InputError("atom " + std::to_string(i + 1) + " is neither a valid REE nor, with the other atoms, a valid REM: " +
                             e.what(),
                         base_ + texts[i].second + inner);
      }
    }
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

bool is_separator_line(std::string_view line) {
  std::size_t i = 0, j = line.size();
  while (i < j && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  while (j > i && std::isspace(static_cast<unsigned char>(line[j - 1]))) --j;
  return line.substr(i, j - i) == "|||";
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

Crdpq parse_crdpq(std::string_view text) { return CrdpqParser(text, 0).parse(); }

Ucrdpq parse_ucrdpq(std::string_view text, std::size_t empty_arity) {
  Ucrdpq u;
  u.arity = empty_arity;
  std::size_t chunk_start = 0, line_start = 0;
  auto flush = [&](std::size_t end) {
    auto chunk = chunk_start <= end ? text.substr(chunk_start, end - chunk_start) : std::string_view{};
    if (is_blank(chunk)) throw InputError("empty member in union query", chunk_start);
    u.members.push_back(CrdpqParser(chunk, chunk_start).parse());
  };
  if (is_blank(text)) return u;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    if (is_separator_line(text.substr(line_start, line_end - line_start))) {
      flush(line_start);
      chunk_start = line_end + 1;
    }
    line_start = line_end + 1;
  }
  flush(text.size());
  u.arity = u.members.front().arity();
  try {
    u.validate();
  } catch (const Error& e) {
    throw InputError(e.what(), 0);
  }
  return u;
}

// ---------------------------------------------------------------------------

namespace {

BitMatrix atom_relation(const DataGraph& g, const PathExpr& e) {
  if (const auto* rem = std::get_if<RemExpr>(&e)) return eval_rem_query(g, *rem).matrix();
  return ree_relation(g, std::get<ReeExpr>(e));
}

class Join {
 public:
  Join(const DataGraph& g, const Crdpq& q, std::vector<BitMatrix> relations)
      : n_(g.node_count()), out_(q.arity(), g.node_count()) {
    std::map<std::string, std::size_t> var_index;
    auto var = [&](const std::string& name) {
      return var_index.emplace(name, var_index.size()).first->second;
    };
    struct Pending {
      std::size_t source, target, size;
      const BitMatrix* rel;
    };
    std::vector<Pending> pending;
    for (std::size_t i = 0; i < q.atoms.size(); ++i) {
      const auto s = var(q.atoms[i].source);
      const auto t = var(q.atoms[i].target);
      pending.push_back({s, t, 0, nullptr});
    }
    relations_ = std::move(relations);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      pending[i].rel = &relations_[i];
      pending[i].size = relations_[i].count();
    }
    for (const auto& z : q.answer) answer_.push_back(var_index.at(z));
    valuation_.assign(var_index.size(), kUnbound);

    // Greedy order: most already-bound endpoints first, then smaller relations.
    std::vector<bool> bound(var_index.size(), false);
    while (!pending.empty()) {
      auto score = [&](const Pending& p) {
        return std::make_pair(-static_cast<int>(bound[p.source] + bound[p.target]), p.size);
      };
      auto best = std::min_element(pending.begin(), pending.end(),
                                   [&](const Pending& a, const Pending& b) { return score(a) < score(b); });
      order_.push_back({best->source, best->target, best->rel});
      bound[best->source] = bound[best->target] = true;
      pending.erase(best);
    }
  }

  NodeRelation run() {
    descend(0);
    return std::move(out_);
  }

 private:
  static constexpr NodeId kUnbound = static_cast<NodeId>(-1);

  struct Step {
    std::size_t source, target;
    const BitMatrix* rel;
  };

  void descend(std::size_t depth) {
    if (depth == order_.size()) {
      Tuple t;
      for (auto z : answer_) t.push_back(valuation_[z]);
      out_.insert(t);
      return;
    }
    const Step& s = order_[depth];
    const NodeId x = valuation_[s.source];
    const NodeId y = valuation_[s.target];
    if (x != kUnbound && y != kUnbound) {
      if (s.rel->test(x, y)) descend(depth + 1);
      return;
    }
    if (s.source == s.target) {
      for (NodeId u = 0; u < n_; ++u) {
        if (!s.rel->test(u, u)) continue;
        valuation_[s.source] = u;
        descend(depth + 1);
      }
      valuation_[s.source] = kUnbound;
      return;
    }
    for (NodeId u = 0; u < n_; ++u) {
      if (x != kUnbound && u != x) continue;
      for (NodeId v = 0; v < n_; ++v) {
        if (y != kUnbound && v != y) continue;
        if (!s.rel->test(u, v)) continue;
        valuation_[s.source] = u;
        valuation_[s.target] = v;
        descend(depth + 1);
      }
    }
    valuation_[s.source] = x;
    valuation_[s.target] = y;
  }

  std::size_t n_;
  NodeRelation out_;
  std::vector<BitMatrix> relations_;
  std::vector<Step> order_;
  std::vector<std::size_t> answer_;
  std::vector<NodeId> valuation_;
};

}  // namespace

NodeRelation eval_crdpq(const DataGraph& g, const Crdpq& q, unsigned jobs) {
  q.validate();
  // Identical atom expressions share one evaluation.
  std::map<std::string, std::size_t> distinct;
  std::vector<const PathExpr*> unique_exprs;
  std::vector<std::size_t> slot;
  for (const auto& a : q.atoms) {
    auto [it, fresh] = distinct.emplace(expr_text(a.expr), unique_exprs.size());
    if (fresh) unique_exprs.push_back(&a.expr);
    slot.push_back(it->second);
  }
  std::vector<BitMatrix> unique_rel(unique_exprs.size());
  if (jobs > 1 && unique_exprs.size() > 1) {
    std::vector<std::future<BitMatrix>> futures;
    for (std::size_t i = 0; i < unique_exprs.size(); ++i) {
      futures.push_back(std::async(std::launch::async, [&g, e = unique_exprs[i]] { return atom_relation(g, *e); }));
      if (futures.size() >= jobs) {
        for (std::size_t j = i + 1 - futures.size(); auto& f : futures) unique_rel[j++] = f.get();
        futures.clear();
      }
    }
    const std::size_t first = unique_exprs.size() - futures.size();
    for (std::size_t j = first; auto& f : futures) unique_rel[j++] = f.get();
  } else {
    for (std::size_t i = 0; i < unique_exprs.size(); ++i) unique_rel[i] = atom_relation(g, *unique_exprs[i]);
  }
  std::vector<BitMatrix> relations;
  for (auto s : slot) relations.push_back(unique_rel[s]);
  return Join(g, q, std::move(relations)).run();
}

NodeRelation eval_ucrdpq(const DataGraph& g, const Ucrdpq& q, unsigned jobs) {
  q.validate();
  NodeRelation out(q.arity, g.node_count());
  for (const auto& m : q.members) {
    for (const auto& t : eval_crdpq(g, m, jobs).tuples()) out.insert(t);
  }
  return out;
}

}  // namespace graphdef
