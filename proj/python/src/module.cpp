#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graphdef/def_ree.hpp"
#include "graphdef/def_rem.hpp"
#include "graphdef/def_ucq.hpp"
#include "graphdef/error.hpp"
#include "graphdef/eval.hpp"
#include "graphdef/io.hpp"

namespace py = pybind11;
using namespace graphdef;

namespace {

using NameTuple = std::vector<std::string>;

std::vector<NameTuple> names_of(const DataGraph& g, const NodeRelation& r) {
  std::vector<NameTuple> out;
  for (const auto& t : r.tuples()) {
    NameTuple row;
    for (NodeId v : t) row.push_back(g.node_name(v));
    out.push_back(std::move(row));
  }
  return out;
}

NodeRelation relation_of(const DataGraph& g, const std::vector<NameTuple>& tuples, std::size_t arity) {
  NodeRelation r(arity, g.node_count());
  for (const auto& row : tuples) {
    if (row.size() != arity)
      throw InputError("tuple of length " + std::to_string(row.size()) + " in a relation of arity " +
                       std::to_string(arity));
    Tuple t;
    for (const auto& name : row) t.push_back(g.node(name));
    r.insert(t);
  }
  return r;
}

NodeRelation evaluate(const DataGraph& g, const std::string& query, const std::string& type, unsigned jobs) {
  if (type == "rem") return eval_rem_query(g, parse_rem(query));
  if (type == "ree") return eval_ree_query(g, parse_ree(query));
  if (type == "rpq") return eval_rpq(g, parse_rem(query));
  if (type == "ucrdpq") return eval_ucrdpq(g, parse_ucrdpq(query), jobs);
  throw InputError("unknown query type '" + type + "'");
}

struct Outcome {
  Decision decision;
  std::optional<std::string> query;
  std::string message;
};

Outcome run(const DataGraph& g, const NodeRelation& s, const std::string& language, std::optional<unsigned> k,
            bool synthesize) {
  if (language == "rem" || language == "rpq") {
    const unsigned regs = language == "rpq" ? 0U : k.value_or(static_cast<unsigned>(g.value_count()));
    const WitnessReport r = decide_k_rem(g, s, regs);
    Outcome o{r.decision, std::nullopt, r.message};
    if (synthesize && r.decision == Decision::Definable) o.query = to_string(synthesize_rem(g, r));
    return o;
  }
  if (language == "ree") {
    const ReeReport r = decide_ree(g, s);
    Outcome o{r.decision, std::nullopt, r.message};
    if (synthesize && r.decision == Decision::Definable) o.query = to_string(synthesize_ree(g, r));
    return o;
  }
  if (language == "ucrdpq") {
    const UcqReport r = decide_ucrdpq(g, s);
    Outcome o{r.decision, std::nullopt, r.message};
    if (synthesize && r.decision == Decision::Definable) o.query = synthesize_ucrdpq(g, s).to_string();
    return o;
  }
  throw InputError("unknown language '" + language + "'");
}

py::dict outcome_dict(const Outcome& o) {
  py::dict d;
  d["decision"] = std::string(to_string(o.decision));
  d["query"] = o.query ? py::object(py::str(*o.query)) : py::object(py::none());
  if (!o.message.empty()) d["message"] = o.message;
  return d;
}

}  // namespace

PYBIND11_MODULE(_graphdef, m) {
  m.doc() = "Native core of the graphdef package.";

  // Translators run newest first, so subclasses are registered last.
  auto& error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", error);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error);

  py::class_<DataGraph>(m, "Graph")
      .def_static("from_json", [](const std::string& text) { return parse_graph(text); }, py::arg("text"))
      .def_static("load", &load_graph, py::arg("path"))
      .def("to_json", &graph_to_json)
      .def_property_readonly("nodes",
                             [](const DataGraph& g) {
                               std::vector<std::string> out;
                               for (NodeId v = 0; v < g.node_count(); ++v) out.push_back(g.node_name(v));
                               return out;
                             })
      .def_property_readonly("alphabet", &DataGraph::alphabet)
      .def_property_readonly("value_count", &DataGraph::value_count)
      .def("data", [](const DataGraph& g, const std::string& node) { return g.value_name(g.value_of(g.node(node))); })
      .def("__len__", &DataGraph::node_count);

  m.def(
      "evaluate",
      [](const DataGraph& g, const std::string& query, const std::string& type, unsigned jobs) {
        return names_of(g, evaluate(g, query, type, jobs));
      },
      py::arg("graph"), py::arg("query"), py::arg("type") = "rem", py::arg("jobs") = 1,
      "Answers of a query as sorted tuples of node names.");

  m.def(
      "decide",
      [](const DataGraph& g, const std::vector<NameTuple>& tuples, const std::string& language,
         std::optional<unsigned> registers, std::size_t arity) {
        Outcome o;
        {
          py::gil_scoped_release release;
          o = run(g, relation_of(g, tuples, arity), language, registers, false);
        }
        return outcome_dict(o);
      },
      py::arg("graph"), py::arg("tuples"), py::arg("language") = "rem", py::arg("registers") = py::none(),
      py::arg("arity") = 2);

  m.def(
      "synthesize",
      [](const DataGraph& g, const std::vector<NameTuple>& tuples, const std::string& language,
         std::optional<unsigned> registers, std::size_t arity) {
        Outcome o;
        {
          py::gil_scoped_release release;
          o = run(g, relation_of(g, tuples, arity), language, registers, true);
        }
        return outcome_dict(o);
      },
      py::arg("graph"), py::arg("tuples"), py::arg("language") = "rem", py::arg("registers") = py::none(),
      py::arg("arity") = 2);

  m.def(
      "canon", [](const std::string& path) { return canonical_path(DataPath::parse(path)).to_string(); },
      py::arg("path"), "Canonical form of a data path: values renamed to first-occurrence indices.");

  m.def(
      "normalize",
      [](const std::string& query, const std::string& type) -> std::string {
        if (type == "rem" || type == "rpq") return to_string(parse_rem(query));
        if (type == "ree") return to_string(parse_ree(query));
        if (type == "ucrdpq") return parse_ucrdpq(query).to_string();
        throw InputError("unknown query type '" + type + "'");
      },
      py::arg("query"), py::arg("type") = "rem", "Reprint a query in normal spacing and bracketing.");

  m.def(
      "canonical_rem", [](const std::string& path) { return to_string(canonical_rem(DataPath::parse(path))); },
      py::arg("path"));
}
