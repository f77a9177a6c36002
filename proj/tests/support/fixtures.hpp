#pragma once

#include <random>
#include <string>
#include <vector>

#include "graphdef/core.hpp"

namespace graphdef::fixtures {

/// The ten-node running example over {a} with data values 0..3.
DataGraph fig1();

NodeRelation pairs(const DataGraph& g, const std::vector<std::pair<std::string, std::string>>& names);

struct RandomGraphSpec {
  std::size_t min_nodes = 1;
  std::size_t max_nodes = 4;
  std::size_t max_values = 3;
  std::size_t letters = 2;
  double edge_probability = 0.3;
  bool constant_data = false;
};

/// Nodes n0.., data d0.., letters a, b, c...
DataGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec);
NodeRelation random_relation(std::mt19937_64& rng, const DataGraph& g, double density);

/// u1 -a-> v1 and u2 -a-> v2, all data equal.
DataGraph disjoint_copies();
/// 1 -a-> 2 with equal data.
DataGraph single_edge();
/// One node n with an a-loop and data 7.
DataGraph loop_node();

}  // namespace graphdef::fixtures
