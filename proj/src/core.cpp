#include "graphdef/core.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>

#include "graphdef/error.hpp"

namespace graphdef {

DataGraph::DataGraph(std::vector<std::string> alphabet, const std::vector<NodeDecl>& nodes,
                     const std::vector<EdgeDecl>& edges)
    : letter_names_(std::move(alphabet)) {
  for (LetterId a = 0; a < letter_names_.size(); ++a) {
    if (!letter_index_.emplace(letter_names_[a], a).second) {
      throw InputError("duplicate letter '" + letter_names_[a] + "' in alphabet");
    }
  }
  std::unordered_map<std::string, ValueId> value_index;
  for (const auto& decl : nodes) {
    const auto id = static_cast<NodeId>(node_names_.size());
    if (!node_index_.emplace(decl.id, id).second) {
      throw InputError("duplicate node '" + decl.id + "'");
    }
    node_names_.push_back(decl.id);
    auto [it, fresh] = value_index.emplace(decl.data, static_cast<ValueId>(value_names_.size()));
    if (fresh) value_names_.push_back(decl.data);
    values_.push_back(it->second);
  }
  for (const auto& decl : edges) {
    auto from = find_node(decl.from);
    auto to = find_node(decl.to);
    auto letter = find_letter(decl.label);
    if (!from) throw InputError("edge source '" + decl.from + "' is not a declared node");
    if (!to) throw InputError("edge target '" + decl.to + "' is not a declared node");
    if (!letter) throw InputError("edge label '" + decl.label + "' is not in the alphabet");
    edges_.push_back({*from, *letter, *to});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  const std::size_t slots = node_count() * letter_count();
  adj_offsets_.assign(slots + 1, 0);
  for (const auto& e : edges_) ++adj_offsets_[e.from * letter_count() + e.letter + 1];
  for (std::size_t i = 0; i < slots; ++i) adj_offsets_[i + 1] += adj_offsets_[i];
  adj_targets_.resize(edges_.size());
  // edges_ is sorted by (from, letter, to), so targets land in order.
  for (std::size_t i = 0; i < edges_.size(); ++i) adj_targets_[i] = edges_[i].to;
}

std::optional<NodeId> DataGraph::find_node(std::string_view name) const {
  auto it = node_index_.find(std::string(name));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<LetterId> DataGraph::find_letter(std::string_view name) const {
  auto it = letter_index_.find(std::string(name));
  if (it == letter_index_.end()) return std::nullopt;
  return it->second;
}

NodeId DataGraph::node(std::string_view name) const {
  auto v = find_node(name);
  if (!v) throw InputError("unknown node '" + std::string(name) + "'");
  return *v;
}

std::span<const NodeId> DataGraph::successors(NodeId v, LetterId letter) const {
  const std::size_t slot = v * letter_count() + letter;
  return {adj_targets_.data() + adj_offsets_[slot], adj_targets_.data() + adj_offsets_[slot + 1]};
}

bool DataGraph::has_edge(NodeId from, LetterId letter, NodeId to) const {
  auto succ = successors(from, letter);
  return std::binary_search(succ.begin(), succ.end(), to);
}

// ---------------------------------------------------------------------------

DataPath::DataPath(std::vector<std::string> vals, std::vector<std::string> lets)
    : values(std::move(vals)), letters(std::move(lets)) {
  if (values.empty() || values.size() != letters.size() + 1) {
    throw Error("a data path needs exactly one more value than letters");
  }
}

DataPath DataPath::concat(const DataPath& right) const {
  if (values.back() != right.values.front()) {
    throw Error("cannot concatenate data paths: boundary values differ");
  }
  DataPath out = *this;
  out.values.insert(out.values.end(), right.values.begin() + 1, right.values.end());
  out.letters.insert(out.letters.end(), right.letters.begin(), right.letters.end());
  return out;
}

DataPath DataPath::parse(std::string_view text) {
  std::vector<std::string> tokens;
  const bool spaced = std::any_of(text.begin(), text.end(),
                                  [](unsigned char c) { return std::isspace(c) != 0; });
  if (spaced) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j > i) tokens.emplace_back(text.substr(i, j - i));
      i = j;
    }
  } else {
    for (char c : text) tokens.emplace_back(1, c);
  }
  if (tokens.empty() || tokens.size() % 2 == 0) {
    throw InputError("data path '" + std::string(text) +
                     "' must alternate values and letters, starting and ending with a value");
  }
  DataPath w;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    (i % 2 == 0 ? w.values : w.letters).push_back(std::move(tokens[i]));
  }
  return w;
}

namespace {

std::string join_tokens(const std::vector<std::string>& values,
                        const std::vector<std::string>& letters) {
  bool compact = true;
  for (const auto& v : values) compact = compact && v.size() == 1;
  for (const auto& a : letters) compact = compact && a.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      if (!compact) out += ' ';
      out += letters[i - 1];
      if (!compact) out += ' ';
    }
    out += values[i];
  }
  return out;
}

}  // namespace

std::string DataPath::to_string() const { return join_tokens(values, letters); }

std::string CanonicalPath::to_string() const { return as_data_path().to_string(); }

DataPath CanonicalPath::as_data_path() const {
  DataPath w;
  for (auto v : values) w.values.push_back(std::to_string(v));
  w.letters = letters;
  return w;
}

CanonicalPath canonical_path(const DataPath& w) {
  CanonicalPath out;
  out.letters = w.letters;
  std::map<std::string, std::uint32_t> first;
  for (const auto& d : w.values) {
    auto [it, fresh] = first.emplace(d, static_cast<std::uint32_t>(first.size()));
    out.values.push_back(it->second);
  }
  return out;
}

DataPath data_path_of(const DataGraph& g, const GraphPath& path) {
  if (path.nodes.empty() || path.nodes.size() != path.letters.size() + 1) {
    throw Error("a graph path needs exactly one more node than letters");
  }
  DataPath w;
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    if (i > 0) {
      if (!g.has_edge(path.nodes[i - 1], path.letters[i - 1], path.nodes[i])) {
        throw Error("no edge " + g.node_name(path.nodes[i - 1]) + " -" +
                    g.letter_name(path.letters[i - 1]) + "-> " + g.node_name(path.nodes[i]));
      }
      w.letters.push_back(g.letter_name(path.letters[i - 1]));
    }
    w.values.push_back(g.value_name(g.value_of(path.nodes[i])));
  }
  return w;
}

// ---------------------------------------------------------------------------

BitMatrix::BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n);
  for (NodeId v = 0; v < n; ++v) m.set(v, v);
  return m;
}

BitMatrix BitMatrix::full(std::size_t n) {
  BitMatrix m(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v) m.set(u, v);
  return m;
}

std::size_t BitMatrix::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitMatrix::empty() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BitMatrix::is_subset_of(const BitMatrix& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

BitMatrix BitMatrix::operator|(const BitMatrix& other) const {
  BitMatrix out = *this;
  out |= other;
  return out;
}

BitMatrix& BitMatrix::operator|=(const BitMatrix& other) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

BitMatrix BitMatrix::operator&(const BitMatrix& other) const {
  BitMatrix out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= other.bits_[i];
  return out;
}

BitMatrix BitMatrix::compose(const BitMatrix& other) const {
  BitMatrix out(n_);
  for (std::size_t u = 0; u < n_; ++u) {
    std::uint64_t* dst = &out.bits_[u * words_];
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = bits_[u * words_ + w];
      while (word) {
        const std::size_t z = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        const std::uint64_t* src = &other.bits_[z * words_];
        for (std::size_t k = 0; k < words_; ++k) dst[k] |= src[k];
      }
    }
  }
  return out;
}

BitMatrix BitMatrix::transitive_closure() const {
  BitMatrix closure = *this;
  for (;;) {
    BitMatrix next = closure | closure.compose(*this);
    if (next == closure) return closure;
    closure = std::move(next);
  }
}

std::size_t BitMatrix::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ n_;
  for (auto w : bits_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::vector<std::pair<NodeId, NodeId>> BitMatrix::pairs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId u = 0; u < n_; ++u)
    for (NodeId v = 0; v < n_; ++v)
      if (test(u, v)) out.emplace_back(u, v);
  return out;
}

// ---------------------------------------------------------------------------

NodeRelation::NodeRelation(std::size_t arity, std::size_t node_count)
    : arity_(arity), node_count_(node_count) {
  if (arity == 0) throw Error("relation arity must be positive");
  if (arity == 2) matrix_ = BitMatrix(node_count);
}

NodeRelation NodeRelation::from_matrix(BitMatrix m) {
  NodeRelation r;
  r.arity_ = 2;
  r.node_count_ = m.dimension();
  r.matrix_ = std::move(m);
  return r;
}

std::size_t NodeRelation::size() const { return arity_ == 2 ? matrix_.count() : sorted_.size(); }

void NodeRelation::check(const Tuple& t) const {
  if (t.size() != arity_) {
    throw Error("tuple of arity " + std::to_string(t.size()) + " in a relation of arity " +
                std::to_string(arity_));
  }
  for (auto v : t) {
    if (v >= node_count_) throw Error("tuple mentions an undeclared node");
  }
}

void NodeRelation::insert(const Tuple& t) {
  check(t);
  if (arity_ == 2) {
    matrix_.set(t[0], t[1]);
    return;
  }
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), t);
  if (it == sorted_.end() || *it != t) sorted_.insert(it, t);
}

bool NodeRelation::contains(const Tuple& t) const {
  if (t.size() != arity_) return false;
  for (auto v : t)
    if (v >= node_count_) return false;
  if (arity_ == 2) return matrix_.test(t[0], t[1]);
  return std::binary_search(sorted_.begin(), sorted_.end(), t);
}

std::vector<Tuple> NodeRelation::tuples() const {
  if (arity_ != 2) return sorted_;
  std::vector<Tuple> out;
  for (auto [u, v] : matrix_.pairs()) out.push_back({u, v});
  return out;
}

const BitMatrix& NodeRelation::matrix() const {
  if (arity_ != 2) throw Error("relation is not binary");
  return matrix_;
}

namespace {

void require_binary(const NodeRelation& s) {
  if (s.arity() != 2) {
    throw Error("relation operators need binary relations, got arity " + std::to_string(s.arity()));
  }
}

void require_same_universe(const NodeRelation& s1, const NodeRelation& s2) {
  require_binary(s1);
  require_binary(s2);
  if (s1.node_count() != s2.node_count()) throw Error("relations over different node sets");
}

}  // namespace

NodeRelation rel_union(const NodeRelation& s1, const NodeRelation& s2) {
  require_same_universe(s1, s2);
  return NodeRelation::from_matrix(s1.matrix() | s2.matrix());
}

NodeRelation rel_compose(const NodeRelation& s1, const NodeRelation& s2) {
  require_same_universe(s1, s2);
  return NodeRelation::from_matrix(s1.matrix().compose(s2.matrix()));
}

BitMatrix same_value_matrix(const DataGraph& g) {
  BitMatrix m(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (g.same_value(u, v)) m.set(u, v);
  return m;
}

BitMatrix letter_matrix(const DataGraph& g, LetterId letter) {
  BitMatrix m(g.node_count());
  for (const auto& e : g.edges())
    if (e.letter == letter) m.set(e.from, e.to);
  return m;
}

BitMatrix edge_matrix(const DataGraph& g) {
  BitMatrix m(g.node_count());
  for (const auto& e : g.edges()) m.set(e.from, e.to);
  return m;
}

NodeRelation rel_eq_restrict(const DataGraph& g, const NodeRelation& s) {
  require_binary(s);
  return NodeRelation::from_matrix(s.matrix() & same_value_matrix(g));
}

NodeRelation rel_neq_restrict(const DataGraph& g, const NodeRelation& s) {
  require_binary(s);
  BitMatrix out = s.matrix();
  for (auto [u, v] : s.matrix().pairs())
    if (g.same_value(u, v)) out.reset(u, v);
  return NodeRelation::from_matrix(std::move(out));
}

}  // namespace graphdef
