#include "fixtures.hpp"

namespace graphdef::fixtures {

DataGraph fig1() {
  std::vector<DataGraph::NodeDecl> nodes = {
      {"v1", "0"}, {"v2", "1"}, {"v3", "0"}, {"v4", "1"}, {"z1", "3"},
      {"z2", "1"}, {"v1'", "2"}, {"v2'", "3"}, {"v3'", "2"}, {"v4'", "3"},
  };
  std::vector<DataGraph::EdgeDecl> edges;
  for (auto [from, to] : std::vector<std::pair<const char*, const char*>>{
           {"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}, {"v1", "z2"}, {"z2", "v2"}, {"z2", "v1'"},
           {"v1'", "v2'"}, {"v2'", "v3'"}, {"v3'", "v4'"}, {"v2'", "v4"}, {"v3", "v3'"}, {"z1", "z2"}}) {
    edges.push_back({from, "a", to});
  }
  return DataGraph({"a"}, nodes, edges);
}

NodeRelation pairs(const DataGraph& g, const std::vector<std::pair<std::string, std::string>>& names) {
  NodeRelation r(2, g.node_count());
  for (const auto& [u, v] : names) r.insert({g.node(u), g.node(v)});
  return r;
}

DataGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec) {
  std::uniform_int_distribution<std::size_t> count(spec.min_nodes, spec.max_nodes);
  std::uniform_int_distribution<std::size_t> value(0, spec.max_values - 1);
  std::bernoulli_distribution edge(spec.edge_probability);
  const std::size_t n = count(rng);
  std::vector<std::string> alphabet;
  for (std::size_t i = 0; i < spec.letters; ++i) alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<DataGraph::NodeDecl> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({"n" + std::to_string(i), "d" + std::to_string(spec.constant_data ? 0 : value(rng))});
  }
  std::vector<DataGraph::EdgeDecl> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (const auto& a : alphabet)
      for (std::size_t v = 0; v < n; ++v)
        if (edge(rng)) edges.push_back({nodes[u].id, a, nodes[v].id});
  return DataGraph(alphabet, nodes, edges);
}

NodeRelation random_relation(std::mt19937_64& rng, const DataGraph& g, double density) {
  std::bernoulli_distribution pick(density);
  NodeRelation r(2, g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (pick(rng)) r.insert({u, v});
  return r;
}

DataGraph disjoint_copies() {
  return DataGraph({"a"}, {{"u1", "0"}, {"v1", "0"}, {"u2", "0"}, {"v2", "0"}},
                   {{"u1", "a", "v1"}, {"u2", "a", "v2"}});
}

DataGraph single_edge() { return DataGraph({"a"}, {{"1", "5"}, {"2", "5"}}, {{"1", "a", "2"}}); }

DataGraph loop_node() { return DataGraph({"a"}, {{"n", "7"}}, {{"n", "a", "n"}}); }

}  // namespace graphdef::fixtures
