// graphdef: evaluate data-graph queries and decide definability of relations.
//
// Exit codes: 0 definable (or success), 1 not definable, 2 resource-exhausted,
// 64 malformed input or usage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphdef/assign.hpp"
#include "graphdef/def_ree.hpp"
#include "graphdef/def_rem.hpp"
#include "graphdef/def_ucq.hpp"
#include "graphdef/error.hpp"
#include "graphdef/eval.hpp"
#include "graphdef/io.hpp"

#ifdef GRAPHDEF_WITH_ORACLE
#include "oracle.hpp"
#endif

using namespace graphdef;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitNotDefinable = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitUsage = 64;

struct Args {
  std::string graph;
  std::string relation;
  std::string query;
  std::string type = "rem";
  std::string language = "rem";
  int registers = -1;  // -1: number of data values
  std::string synthesize;
  std::size_t budget = 0;  // 0: module default
  unsigned jobs = 1;
  std::string output;
  std::vector<std::string> path;
  std::size_t max_letters = 4;
  std::string what;
};

// Query parse errors carry an offset into the file text; name the file too.
template <class F>
auto parse_file(const std::string& path, F&& parse) {
  const std::string text = read_text_file(path);
  try {
    return parse(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what(), e.position());
  }
}

int exit_code(Decision d) {
  switch (d) {
    case Decision::Definable:
      return 0;
    case Decision::NotDefinable:
      return kExitNotDefinable;
    case Decision::ResourceExhausted:
      return kExitExhausted;
  }
  return kExitExhausted;
}

Json tuple_json(const DataGraph& g, const Tuple& t) {
  Json out = Json::array();
  for (NodeId v : t) out.push_back(g.node_name(v));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text << "\n";
}

NodeRelation evaluate(const DataGraph& g, const Args& a) {
  if (a.type == "rem") return eval_rem_query(g, parse_file(a.query, [](auto& t) { return parse_rem(t); }));
  if (a.type == "ree") return eval_ree_query(g, parse_file(a.query, [](auto& t) { return parse_ree(t); }));
  if (a.type == "rpq") return eval_rpq(g, parse_file(a.query, [](auto& t) { return parse_rem(t); }));
  if (a.type == "crdpq") return eval_crdpq(g, parse_file(a.query, [](auto& t) { return parse_crdpq(t); }), a.jobs);
  return eval_ucrdpq(g, parse_file(a.query, [](auto& t) { return parse_ucrdpq(t); }), a.jobs);
}

int cmd_eval(const Args& a) {
  const DataGraph g = load_graph(a.graph);
  std::cout << relation_to_json(g, evaluate(g, a)) << "\n";
  return 0;
}

struct Decided {
  Json report;
  Decision decision;
  std::string query;  // synthesized text when definable
};

Decided decide(const Args& a) {
  const DataGraph g = load_graph(a.graph);
  const NodeRelation s = load_relation(a.relation, g);
  Decided out;
  out.report["language"] = a.language;
  if (a.language == "rem") {
    RemSearchOptions opt;
    if (a.budget) opt.max_tuples = a.budget;
    const unsigned k = a.registers < 0 ? static_cast<unsigned>(g.value_count()) : static_cast<unsigned>(a.registers);
    const WitnessReport r = decide_k_rem(g, s, k, opt);
    out.decision = r.decision;
    out.report["decision"] = to_string(r.decision);
    out.report["registers"] = r.registers;
    out.report["tuples_visited"] = r.tuples_visited;
    if (r.decision == Decision::Definable) {
      Json ws = Json::array();
      for (const auto& w : r.witnesses)
        ws.push_back({{"pair", tuple_json(g, {w.source, w.target})}, {"witness", w.witness.to_string()}});
      out.report["witnesses"] = ws;
      out.query = to_string(synthesize_rem(g, r));
    } else if (r.failing_pair) {
      out.report["failing_pair"] = tuple_json(g, {r.failing_pair->first, r.failing_pair->second});
    }
    if (!r.message.empty()) out.report["message"] = r.message;
  } else if (a.language == "ree") {
    LevelOptions opt;
    if (a.budget) opt.max_relations = a.budget;
    const ReeReport r = decide_ree(g, s, opt);
    out.decision = r.decision;
    out.report["decision"] = to_string(r.decision);
    if (r.decision != Decision::ResourceExhausted) {
      out.report["generators"] = r.levels.generators().size();
      out.report["stable_level"] = r.levels.last_level();
    }
    if (r.level) out.report["level"] = *r.level;
    if (r.decision == Decision::Definable) out.query = to_string(synthesize_ree(g, r));
    if (!r.message.empty()) out.report["message"] = r.message;
  } else {
    HomSearchOptions opt;
    if (a.budget) opt.max_steps = a.budget;
    const UcqReport r = decide_ucrdpq(g, s, opt);
    out.decision = r.decision;
    out.report["decision"] = to_string(r.decision);
    out.report["steps"] = r.steps;
    if (r.counterexample) {
      Json hom = Json::object();
      for (NodeId v = 0; v < r.counterexample->hom.size(); ++v)
        hom[g.node_name(v)] = g.node_name(r.counterexample->hom[v]);
      out.report["counterexample"] = {{"hom", hom},
                                      {"tuple", tuple_json(g, r.counterexample->tuple)},
                                      {"image", tuple_json(g, r.counterexample->image)}};
    }
    if (r.decision == Decision::Definable) out.query = synthesize_ucrdpq(g, s, opt).to_string();
    if (!r.message.empty()) out.report["message"] = r.message;
  }
  return out;
}

int cmd_definable(const Args& a) {
  Decided d = decide(a);
  if (!a.synthesize.empty() && d.decision == Decision::Definable) {
    write_text(a.synthesize, d.query);
    d.report["synthesized"] = a.synthesize;
  }
  std::cout << d.report.dump(2) << "\n";
  return exit_code(d.decision);
}

int cmd_synthesize(const Args& a) {
  const Decided d = decide(a);
  if (d.decision != Decision::Definable) {
    std::cerr << "graphdef: relation is " << to_string(d.decision) << " for language " << a.language << "\n";
    return exit_code(d.decision);
  }
  write_text(a.output, d.query);
  return 0;
}

int cmd_canon(const Args& a) {
  std::string text;
  for (const auto& tok : a.path) text += (text.empty() ? "" : " ") + tok;
  std::cout << canonical_path(DataPath::parse(text)).to_string() << "\n";
  return 0;
}

int cmd_assign_graph(const Args& a) {
  const DataGraph g = load_graph(a.graph);
  const unsigned k = a.registers < 0 ? 1U : static_cast<unsigned>(a.registers);
  std::cout << AssignmentGraph(g, k).dump();
  return 0;
}

#ifdef GRAPHDEF_WITH_ORACLE
int cmd_oracle(const Args& a) {
  const DataGraph g = load_graph(a.graph);
  if (a.what == "paths") {
    Json out = Json::array();
    for (const auto& [ends, paths] : oracle::enum_paths(g, a.max_letters)) {
      Json ps = Json::array();
      for (const auto& p : paths) ps.push_back(p.to_string());
      out.push_back({{"pair", tuple_json(g, {ends.first, ends.second})}, {"paths", ps}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (a.what == "eval") {
    const NodeRelation r =
        a.type == "ree"
            ? oracle::eval_by_paths(g, parse_file(a.query, [](auto& t) { return parse_ree(t); }), a.max_letters)
            : oracle::eval_by_paths(g, parse_file(a.query, [](auto& t) { return parse_rem(t); }), a.max_letters);
    std::cout << relation_to_json(g, r) << "\n";
    return 0;
  }
  if (a.what == "homs") {
    Json out = Json::array();
    for (const auto& h : oracle::enum_homs_bruteforce(g)) out.push_back(tuple_json(g, h));
    std::cout << out.dump() << "\n";
    return 0;
  }
  // rpq
  const bool ok = oracle::rpq_definable_bruteforce(g, load_relation(a.relation, g));
  std::cout << (ok ? "definable" : "not-definable") << "\n";
  return ok ? 0 : kExitNotDefinable;
}
#endif

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate queries on data graphs and decide definability of relations."};
  app.require_subcommand(1);
  Args a;

  auto* eval = app.add_subcommand("eval", "Evaluate a query file on a graph; prints the relation as JSON");
  eval->add_option("--graph", a.graph, "Graph JSON file")->required()->check(CLI::ExistingFile);
  eval->add_option("--query", a.query, "Query file")->required()->check(CLI::ExistingFile);
  eval->add_option("--type", a.type, "Query language")
      ->check(CLI::IsMember({"rem", "ree", "rpq", "crdpq", "ucrdpq"}))
      ->capture_default_str();
  eval->add_option("--jobs", a.jobs, "Worker threads for conjunctive queries")->check(CLI::Range(1, 256));

  auto add_decision_flags = [&](CLI::App* sub) {
    sub->add_option("--graph", a.graph, "Graph JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--relation", a.relation, "Relation JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--language", a.language, "Target language")
        ->check(CLI::IsMember({"rem", "ree", "ucrdpq"}))
        ->capture_default_str();
    sub->add_option("--registers", a.registers, "Registers for --language rem (default: number of data values)")
        ->check(CLI::Range(0, 31));
    sub->add_option("--budget", a.budget, "Search budget (tuples, relations or steps)")->check(CLI::PositiveNumber);
  };
  auto* definable = app.add_subcommand("definable", "Decide definability; prints a JSON report");
  add_decision_flags(definable);
  definable->add_option("--synthesize", a.synthesize, "Write a defining query here when definable");
  auto* synth = app.add_subcommand("synthesize", "Print a defining query");
  add_decision_flags(synth);
  synth->add_option("-o,--output", a.output, "Output file (default: standard output)");

  auto* canon = app.add_subcommand("canon", "Canonical form of a data path such as 2a3a2a3 or '10 a 11 b 10'");
  canon->add_option("path", a.path, "Data path tokens")->required();

  auto* assign = app.add_subcommand("assign-graph", "Debug: dump the k-assignment graph as an edge list");
  assign->add_option("--graph", a.graph, "Graph JSON file")->required()->check(CLI::ExistingFile);
  assign->add_option("--registers", a.registers, "Number of registers (default 1)")->check(CLI::Range(0, 8));

#ifdef GRAPHDEF_WITH_ORACLE
  auto* orc = app.add_subcommand("oracle", "Brute-force cross-checks")->group("");
  orc->add_option("what", a.what, "paths | eval | homs | rpq")
      ->required()
      ->check(CLI::IsMember({"paths", "eval", "homs", "rpq"}));
  orc->add_option("--graph", a.graph, "Graph JSON file")->required()->check(CLI::ExistingFile);
  orc->add_option("--query", a.query, "Query file")->check(CLI::ExistingFile);
  orc->add_option("--relation", a.relation, "Relation JSON file")->check(CLI::ExistingFile);
  orc->add_option("--type", a.type, "rem | ree")->check(CLI::IsMember({"rem", "ree"}));
  orc->add_option("--max-letters", a.max_letters, "Path length bound");
#endif

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(a);
    if (*definable) return cmd_definable(a);
    if (*synth) return cmd_synthesize(a);
    if (*canon) return cmd_canon(a);
    if (*assign) return cmd_assign_graph(a);
#ifdef GRAPHDEF_WITH_ORACLE
    if (*orc) return cmd_oracle(a);
#endif
  } catch (const BudgetExceeded& e) {
    std::cerr << "graphdef: resource-exhausted: " << e.what() << "\n";
    return kExitExhausted;
  } catch (const Error& e) {
    std::cerr << "graphdef: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
