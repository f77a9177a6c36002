#include "graphdef/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "graphdef/error.hpp"

namespace graphdef {

using nlohmann::ordered_json;

namespace {

ordered_json parse_json(std::string_view text, const std::string& source) {
  try {
    return ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::parse_error& e) {
    throw InputError(source + ": " + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
}

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& source) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(source + ": missing field \"" + key + "\"");
  }
  return obj.at(key);
}

std::string string_field(const ordered_json& obj, const char* key, const std::string& source) {
  const auto& v = field(obj, key, source);
  if (!v.is_string()) throw InputError(source + ": field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DataGraph parse_graph(std::string_view json_text, const std::string& source) {
  const auto doc = parse_json(json_text, source);
  std::vector<std::string> alphabet;
  for (const auto& a : field(doc, "alphabet", source)) {
    if (!a.is_string()) throw InputError(source + ": alphabet entries must be strings");
    alphabet.push_back(a.get<std::string>());
  }
  std::vector<DataGraph::NodeDecl> nodes;
  for (const auto& n : field(doc, "nodes", source)) {
    nodes.push_back({string_field(n, "id", source), string_field(n, "data", source)});
  }
  std::vector<DataGraph::EdgeDecl> edges;
  if (doc.contains("edges")) {
    for (const auto& e : doc.at("edges")) {
      edges.push_back({string_field(e, "from", source), string_field(e, "label", source),
                       string_field(e, "to", source)});
    }
  }
  try {
    return DataGraph(std::move(alphabet), nodes, edges);
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

DataGraph load_graph(const std::string& path) { return parse_graph(read_text_file(path), path); }

NodeRelation parse_relation(std::string_view json_text, const DataGraph& g,
                            const std::string& source) {
  const auto doc = parse_json(json_text, source);
  const auto& arity_field = field(doc, "arity", source);
  if (!arity_field.is_number_unsigned() || arity_field.get<std::size_t>() == 0) {
    throw InputError(source + ": \"arity\" must be a positive integer");
  }
  const auto arity = arity_field.get<std::size_t>();
  NodeRelation rel(arity, g.node_count());
  for (const auto& t : field(doc, "tuples", source)) {
    if (!t.is_array() || t.size() != arity) {
      throw InputError(source + ": every tuple must be an array of " + std::to_string(arity) +
                       " node ids");
    }
    Tuple tuple;
    for (const auto& v : t) {
      if (!v.is_string()) throw InputError(source + ": node ids must be strings");
      auto id = g.find_node(v.get<std::string>());
      if (!id) throw InputError(source + ": unknown node '" + v.get<std::string>() + "'");
      tuple.push_back(*id);
    }
    rel.insert(tuple);
  }
  return rel;
}

NodeRelation load_relation(const std::string& path, const DataGraph& g) {
  return parse_relation(read_text_file(path), g, path);
}

std::string graph_to_json(const DataGraph& g) {
  ordered_json doc;
  doc["alphabet"] = g.alphabet();
  doc["nodes"] = ordered_json::array();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    doc["nodes"].push_back({{"id", g.node_name(v)}, {"data", g.value_name(g.value_of(v))}});
  }
  doc["edges"] = ordered_json::array();
  for (const auto& e : g.edges()) {
    doc["edges"].push_back({{"from", g.node_name(e.from)},
                            {"label", g.letter_name(e.letter)},
                            {"to", g.node_name(e.to)}});
  }
  return doc.dump(2);
}

std::string relation_to_json(const DataGraph& g, const NodeRelation& r) {
  ordered_json doc;
  doc["arity"] = r.arity();
  doc["tuples"] = ordered_json::array();
  for (const auto& t : r.tuples()) {
    ordered_json row = ordered_json::array();
    for (auto v : t) row.push_back(g.node_name(v));
    doc["tuples"].push_back(std::move(row));
  }
  return doc.dump();
}

}  // namespace graphdef
