#pragma once

#include <string>
#include <string_view>

#include "graphdef/core.hpp"

namespace graphdef {

// Graph files:
//   {"alphabet": ["a", ...],
//    "nodes": [{"id": "v1", "data": "0"}, ...],
//    "edges": [{"from": "v1", "label": "a", "to": "v2"}, ...]}
// Relation files:
//   {"arity": 2, "tuples": [["v1", "v4"], ...]}
// All readers throw InputError naming the source and, for JSON syntax
// errors, the byte offset.

DataGraph parse_graph(std::string_view json_text, const std::string& source = "<graph>");
DataGraph load_graph(const std::string& path);

NodeRelation parse_relation(std::string_view json_text, const DataGraph& g,
                            const std::string& source = "<relation>");
NodeRelation load_relation(const std::string& path, const DataGraph& g);

std::string graph_to_json(const DataGraph& g);
/// Tuples in sorted node order; byte-identical for equal relations.
std::string relation_to_json(const DataGraph& g, const NodeRelation& r);

std::string read_text_file(const std::string& path);

}  // namespace graphdef
