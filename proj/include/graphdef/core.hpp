#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace graphdef {

using NodeId = std::uint32_t;
using LetterId = std::uint32_t;
using ValueId = std::uint32_t;

struct Edge {
  NodeId from;
  LetterId letter;
  NodeId to;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A finite directed graph with letter-labelled edges and one opaque data
/// value per node. Nodes, letters and data values are interned to dense
/// indices in declaration order (values in order of first occurrence over
/// the node list). Immutable once constructed.
class DataGraph {
 public:
  struct NodeDecl {
    std::string id;
    std::string data;
  };
  struct EdgeDecl {
    std::string from;
    std::string label;
    std::string to;
  };

  DataGraph() = default;
  /// Throws InputError on duplicate identifiers, undeclared edge endpoints
  /// or letters outside the alphabet.
  DataGraph(std::vector<std::string> alphabet, const std::vector<NodeDecl>& nodes,
            const std::vector<EdgeDecl>& edges);

  std::size_t node_count() const { return node_names_.size(); }
  std::size_t letter_count() const { return letter_names_.size(); }
  /// Number of distinct data values (often written delta).
  std::size_t value_count() const { return value_names_.size(); }

  const std::string& node_name(NodeId v) const { return node_names_.at(v); }
  const std::string& letter_name(LetterId a) const { return letter_names_.at(a); }
  const std::string& value_name(ValueId d) const { return value_names_.at(d); }
  const std::vector<std::string>& alphabet() const { return letter_names_; }

  ValueId value_of(NodeId v) const { return values_[v]; }
  bool same_value(NodeId u, NodeId v) const { return values_[u] == values_[v]; }

  std::optional<NodeId> find_node(std::string_view name) const;
  std::optional<LetterId> find_letter(std::string_view name) const;
  /// Like find_node, but throws InputError for unknown names.
  NodeId node(std::string_view name) const;

  const std::vector<Edge>& edges() const { return edges_; }
  /// Targets of `letter`-edges leaving `v`, ascending.
  std::span<const NodeId> successors(NodeId v, LetterId letter) const;
  bool has_edge(NodeId from, LetterId letter, NodeId to) const;

 private:
  std::vector<std::string> letter_names_;
  std::vector<std::string> node_names_;
  std::vector<std::string> value_names_;
  std::vector<ValueId> values_;
  std::vector<Edge> edges_;  // sorted, deduplicated
  std::unordered_map<std::string, NodeId> node_index_;
  std::unordered_map<std::string, LetterId> letter_index_;
  // CSR adjacency keyed by (node, letter).
  std::vector<std::uint32_t> adj_offsets_;
  std::vector<NodeId> adj_targets_;
};

/// Alternating sequence d0 a0 d1 ... a(m-1) dm. Values are opaque tokens.
struct DataPath {
  std::vector<std::string> values;
  std::vector<std::string> letters;

  DataPath() = default;
  DataPath(std::vector<std::string> vals, std::vector<std::string> lets);

  std::size_t length() const { return letters.size(); }
  /// Joins two paths sharing the boundary value; throws Error otherwise.
  DataPath concat(const DataPath& right) const;

  /// Compact text form. Whitespace-separated tokens when present, otherwise
  /// one character per token: "2a3a2a3" and "10 a 11" are both accepted.
  static DataPath parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const DataPath&, const DataPath&) = default;
  friend auto operator<=>(const DataPath&, const DataPath&) = default;
};

/// A data path whose values are renamed to first-occurrence indices.
struct CanonicalPath {
  std::vector<std::uint32_t> values;
  std::vector<std::string> letters;

  std::string to_string() const;
  DataPath as_data_path() const;

  friend bool operator==(const CanonicalPath&, const CanonicalPath&) = default;
  friend auto operator<=>(const CanonicalPath&, const CanonicalPath&) = default;
};

CanonicalPath canonical_path(const DataPath& w);

/// A path in a graph: nodes interleaved with letters.
struct GraphPath {
  std::vector<NodeId> nodes;
  std::vector<LetterId> letters;
};

/// Replaces every node of `path` by its data value. Throws Error when a step
/// is not an edge of `g`.
DataPath data_path_of(const DataGraph& g, const GraphPath& path);

/// Square boolean matrix over the nodes of one graph; the representation of
/// every binary relation in the library.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n);

  static BitMatrix identity(std::size_t n);
  static BitMatrix full(std::size_t n);

  std::size_t dimension() const { return n_; }
  bool test(NodeId u, NodeId v) const {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  void set(NodeId u, NodeId v) { bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }
  void reset(NodeId u, NodeId v) { bits_[u * words_ + v / 64] &= ~(std::uint64_t{1} << (v % 64)); }

  std::size_t count() const;
  bool empty() const;
  bool is_subset_of(const BitMatrix& other) const;

  BitMatrix operator|(const BitMatrix& other) const;
  BitMatrix operator&(const BitMatrix& other) const;
  BitMatrix& operator|=(const BitMatrix& other);
  /// Relational composition: {(u,v) | exists z. (u,z) in *this and (z,v) in other}.
  BitMatrix compose(const BitMatrix& other) const;
  /// Transitive closure (one or more steps).
  BitMatrix transitive_closure() const;

  std::size_t hash() const;
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  /// Pairs in row-major order.
  std::vector<std::pair<NodeId, NodeId>> pairs() const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct BitMatrixHash {
  std::size_t operator()(const BitMatrix& m) const { return m.hash(); }
};

using Tuple = std::vector<NodeId>;

/// A finite set of node tuples of one arity. Binary relations are kept as a
/// bit matrix, other arities as a sorted tuple set.
class NodeRelation {
 public:
  NodeRelation() = default;
  /// Empty relation of the given arity over a graph with `node_count` nodes.
  NodeRelation(std::size_t arity, std::size_t node_count);
  static NodeRelation from_matrix(BitMatrix m);

  std::size_t arity() const { return arity_; }
  std::size_t node_count() const { return node_count_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  void insert(const Tuple& t);
  bool contains(const Tuple& t) const;
  /// All tuples in lexicographic node order.
  std::vector<Tuple> tuples() const;

  /// Bit matrix view; throws Error unless arity() == 2.
  const BitMatrix& matrix() const;

  friend bool operator==(const NodeRelation&, const NodeRelation&) = default;

 private:
  void check(const Tuple& t) const;

  std::size_t arity_ = 0;
  std::size_t node_count_ = 0;
  BitMatrix matrix_;          // arity == 2
  std::vector<Tuple> sorted_;  // otherwise
};

NodeRelation rel_union(const NodeRelation& s1, const NodeRelation& s2);
NodeRelation rel_compose(const NodeRelation& s1, const NodeRelation& s2);
NodeRelation rel_eq_restrict(const DataGraph& g, const NodeRelation& s);
NodeRelation rel_neq_restrict(const DataGraph& g, const NodeRelation& s);

/// Pairs (u,v) with equal data values, as a matrix. Restrictions are
/// intersections with this matrix or its complement.
BitMatrix same_value_matrix(const DataGraph& g);
BitMatrix letter_matrix(const DataGraph& g, LetterId letter);
BitMatrix edge_matrix(const DataGraph& g);

}  // namespace graphdef
