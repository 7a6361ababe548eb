#include "pclyap/json_io.h"

#include <cmath>
#include <fstream>
#include <set>

#include "pclyap/error.h"

namespace pclyap::io {

namespace {

template <class F>
auto guarded(std::string_view what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

std::vector<std::string> strings(const json& j, std::string_view what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw InvalidInput(std::string(what) + " must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

const json& field(const json& j, const char* key, std::string_view what) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw InvalidInput(std::string(what) + " is missing \"" + key + "\"");
  }
  return *it;
}

std::vector<NodeIndex> node_list(const LabeledGraph& g, const json& j,
                                 std::string_view what) {
  std::vector<NodeIndex> out;
  for (const auto& name : strings(j, what)) out.push_back(g.node_index(name));
  return out;
}

// JSON has no infinities; non-finite values become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return guarded("parsing " + path, [&] { return json::parse(in); });
}

void write_json_file(const std::string& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << value.dump(2) << '\n';
}

void require_keys(const json& j, std::initializer_list<std::string_view> allowed,
                  std::string_view what) {
  if (!j.is_object()) throw InvalidInput(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidInput(std::string(what) + " has unknown key \"" + key + "\"");
    }
  }
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array() || j.empty()) throw InvalidInput("matrix must be a nonempty array of rows");
    const auto rows = j.size();
    const auto cols = j.at(0).size();
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!j[r].is_array() || j[r].size() != cols) {
        throw InvalidInput("matrix rows must have equal length");
      }
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
  });
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const LabeledGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    const auto n = g.named(e);
    edges.push_back({n.source, n.dest, n.label});
  }
  return {{"alphabet", g.alphabet().symbols()}, {"nodes", g.nodes()}, {"edges", edges}};
}

LabeledGraph graph_from_json(const json& j, std::initializer_list<std::string_view> extra) {
  if (!j.is_object()) throw InvalidInput("graph must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    const bool known = key == "alphabet" || key == "nodes" || key == "edges" ||
                       std::find(extra.begin(), extra.end(), key) != extra.end();
    if (!known) throw InvalidInput("graph has unknown key \"" + key + "\"");
  }
  Alphabet alphabet(strings(field(j, "alphabet", "graph"), "alphabet"));
  auto nodes = strings(field(j, "nodes", "graph"), "nodes");
  std::vector<NamedEdge> edges;
  const auto& raw = field(j, "edges", "graph");
  if (!raw.is_array()) throw InvalidInput("edges must be an array");
  for (const auto& e : raw) {
    auto triple = strings(e, "edge");
    if (triple.size() != 3) throw InvalidInput("edge must be [source, dest, label]");
    edges.push_back({triple[0], triple[1], triple[2]});
  }
  return LabeledGraph(std::move(alphabet), std::move(nodes), edges);
}

json to_json(const Automaton& a) {
  json j = to_json(a.graph());
  json initial = json::array(), accepting = json::array();
  for (NodeIndex n : a.initial()) initial.push_back(a.graph().node(n));
  for (NodeIndex n : a.accepting()) accepting.push_back(a.graph().node(n));
  j["initial"] = initial;
  j["accepting"] = accepting;
  return j;
}

Automaton automaton_from_json(const json& j) {
  auto graph = graph_from_json(j, {"initial", "accepting"});
  auto initial = node_list(graph, field(j, "initial", "automaton"), "initial");
  auto accepting = node_list(graph, field(j, "accepting", "automaton"), "accepting");
  return Automaton(std::move(graph), std::move(initial), std::move(accepting));
}

json to_json(const ObserverGraph& obs) {
  json j = to_json(obs.graph);
  j["root"] = obs.graph.node(obs.root);
  json subsets = json::object();
  for (NodeIndex p = 0; p < obs.graph.node_count(); ++p) {
    subsets[obs.graph.node(p)] = obs.subset_names(p);
  }
  j["subsets"] = subsets;
  j["base"] = to_json(obs.base);
  return j;
}

ObserverGraph observer_from_json(const json& j) {
  auto graph = graph_from_json(j, {"root", "subsets", "base"});
  auto base = graph_from_json(field(j, "base", "observer"));
  const auto root_name = guarded("observer root", [&] {
    return field(j, "root", "observer").get<std::string>();
  });
  const auto& subsets_json = field(j, "subsets", "observer");
  if (!subsets_json.is_object()) throw InvalidInput("subsets must be an object");
  std::vector<std::vector<NodeIndex>> subsets;
  for (NodeIndex p = 0; p < graph.node_count(); ++p) {
    auto it = subsets_json.find(graph.node(p));
    if (it == subsets_json.end()) {
      throw InvalidInput("no subset for observer node '" + graph.node(p) + "'");
    }
    auto members = node_list(base, *it, "subset");
    std::sort(members.begin(), members.end());
    subsets.push_back(std::move(members));
  }
  const NodeIndex root = graph.node_index(root_name);
  if (subsets[root].size() != base.node_count()) {
    throw InvalidInput("observer root must be the full base node set");
  }
  return ObserverGraph{std::move(base), std::move(graph), root, std::move(subsets)};
}

json to_json(const CoveringFamily& c) {
  json members = json::array();
  for (const auto& m : c.members) {
    if (m.stem) {
      members.push_back({{"name", m.name}, {"stem", *m.stem}});
    } else {
      members.push_back({{"name", m.name}, {"automaton", to_json(m.language)}});
    }
  }
  return {{"alphabet", c.alphabet.symbols()}, {"members", members}};
}

CoveringFamily covering_from_json(const json& j) {
  require_keys(j, {"alphabet", "members"}, "covering");
  Alphabet alphabet(strings(field(j, "alphabet", "covering"), "alphabet"));
  CoveringFamily family{alphabet, {}};
  const auto& members = field(j, "members", "covering");
  if (!members.is_array()) throw InvalidInput("members must be an array");
  for (const auto& m : members) {
    require_keys(m, {"name", "stem", "automaton"}, "covering member");
    const bool has_stem = m.contains("stem");
    const bool has_automaton = m.contains("automaton");
    if (has_stem == has_automaton) {
      throw InvalidInput("covering member needs exactly one of \"stem\" and \"automaton\"");
    }
    if (has_stem) {
      Word stem = strings(m["stem"], "stem");
      auto name = m.contains("name") ? guarded("member name", [&] { return m["name"].get<std::string>(); })
                                     : prefix_class_name(alphabet, stem);
      family.members.push_back({std::move(name), prefix_class_automaton(alphabet, stem), stem});
    } else {
      auto name = guarded("member name", [&] { return field(m, "name", "covering member").get<std::string>(); });
      family.members.push_back({std::move(name), automaton_from_json(m["automaton"]), std::nullopt});
    }
  }
  return family;
}

json to_json(const CoveringFamily& c, const CoveringReport& report) {
  json j = {{"valid", report.valid()}, {"covers", report.covers}, {"closed", report.closed}};
  if (report.uncovered_word) j["uncovered_word"] = *report.uncovered_word;
  if (report.unclosed) {
    j["unclosed"] = {{"member", c.members[report.unclosed->first].name},
                     {"symbol", c.alphabet.symbol(report.unclosed->second)}};
  }
  return j;
}

json to_json(const SwitchedLinearSystem& sys) {
  json modes = json::object();
  for (SymbolIndex i = 0; i < sys.alphabet().size(); ++i) {
    modes[sys.alphabet().symbol(i)] = matrix_to_json(sys.mode(i));
  }
  return {{"alphabet", sys.alphabet().symbols()}, {"dimension", sys.dimension()},
          {"modes", modes}};
}

SwitchedLinearSystem system_from_json(const json& j) {
  require_keys(j, {"alphabet", "dimension", "modes"}, "system");
  Alphabet alphabet(strings(field(j, "alphabet", "system"), "alphabet"));
  const int dimension = guarded("system dimension", [&] {
    return field(j, "dimension", "system").get<int>();
  });
  const auto& modes_json = field(j, "modes", "system");
  if (!modes_json.is_object()) throw InvalidInput("modes must be an object");
  for (const auto& [key, _] : modes_json.items()) alphabet.index(key);
  std::vector<Eigen::MatrixXd> modes;
  for (const auto& s : alphabet.symbols()) {
    auto it = modes_json.find(s);
    if (it == modes_json.end()) throw InvalidInput("no matrix for symbol '" + s + "'");
    modes.push_back(matrix_from_json(*it));
  }
  SwitchedLinearSystem sys(std::move(alphabet), std::move(modes));
  if (sys.dimension() != dimension) {
    throw InvalidInput("declared dimension does not match the matrices");
  }
  return sys;
}

json to_json(const QuadraticCertificate& cert) {
  json j = to_json(cert.graph);
  j["rho"] = cert.rho;
  json p = json::object();
  for (NodeIndex s = 0; s < cert.graph.node_count(); ++s) {
    p[cert.graph.node(s)] = matrix_to_json(cert.P.at(s));
  }
  j["P"] = p;
  j["margin"] = number(cert.margin);
  return j;
}

QuadraticCertificate certificate_from_json(const json& j) {
  auto graph = graph_from_json(j, {"rho", "P", "margin"});
  const double rho = guarded("certificate rho", [&] {
    return field(j, "rho", "certificate").get<double>();
  });
  const auto& p_json = field(j, "P", "certificate");
  if (!p_json.is_object()) throw InvalidInput("P must be an object");
  for (const auto& [key, _] : p_json.items()) graph.node_index(key);
  std::vector<Eigen::MatrixXd> P;
  for (const auto& node : graph.nodes()) {
    auto it = p_json.find(node);
    if (it == p_json.end()) throw InvalidInput("no matrix for node '" + node + "'");
    P.push_back(matrix_from_json(*it));
  }
  double margin = 0.0;
  if (auto it = j.find("margin"); it != j.end() && !it->is_null()) {
    margin = guarded("certificate margin", [&] { return it->get<double>(); });
  }
  return QuadraticCertificate{std::move(graph), std::move(P), rho, margin};
}

json to_json(const JsrBoundResult& result) {
  json trace = json::array();
  for (const auto& probe : result.trace) trace.push_back({probe.rho, number(probe.margin)});
  return {{"rho_upper", result.rho_upper},
          {"rho_infeasible", result.rho_infeasible},
          {"tolerance", result.tolerance},
          {"trace", trace},
          {"certificate", to_json(result.certificate)}};
}

json to_json(const MaxQuadraticFunction& w) {
  json members = json::object();
  for (std::size_t i = 0; i < w.members.size(); ++i) {
    json forms = json::array();
    for (const auto& p : w.forms[i]) forms.push_back(matrix_to_json(p));
    members[w.members[i]] = {{"sources", w.sources[i]}, {"P", forms}};
  }
  // Member order is kept explicitly; JSON objects are unordered.
  return {{"order", w.members}, {"members", members}};
}

MaxQuadraticFunction max_quadratic_from_json(const json& j) {
  require_keys(j, {"order", "members"}, "max-quadratic function");
  const auto order = strings(field(j, "order", "max-quadratic function"), "order");
  const auto& members = field(j, "members", "max-quadratic function");
  MaxQuadraticFunction w;
  for (const auto& name : order) {
    auto it = members.find(name);
    if (it == members.end()) throw InvalidInput("no entry for member '" + name + "'");
    require_keys(*it, {"sources", "P"}, "member");
    w.members.push_back(name);
    w.sources.push_back(strings(field(*it, "sources", "member"), "sources"));
    std::vector<Eigen::MatrixXd> forms;
    for (const auto& p : field(*it, "P", "member")) forms.push_back(matrix_from_json(p));
    w.forms.push_back(std::move(forms));
  }
  return w;
}

json to_json(const VerificationReport& report, double rho) {
  auto checks = [](const std::vector<ConstraintCheck>& list) {
    json out = json::array();
    for (const auto& c : list) {
      out.push_back({{"label", c.label},
                     {"min_eigenvalue", c.min_eigenvalue},
                     {"threshold", c.threshold},
                     {"ok", c.ok()}});
    }
    return out;
  };
  return {{"passed", report.passed},
          {"rho", rho},
          {"margin", number(report.margin)},
          {"nodes", checks(report.nodes)},
          {"edges", checks(report.edges)}};
}

json to_json(const Alphabet& alphabet, const JsrLowerBound& bound) {
  return {{"rho_lower", bound.rho_lower},
          {"witness", bound.witness},
          {"witness_text", format_word(alphabet, bound.witness)}};
}

json to_json(const Alphabet& alphabet, const DecreaseReport& report) {
  json j = {{"passed", report.passed()},
            {"seed", report.seed},
            {"trials", report.trials},
            {"horizon", report.horizon},
            {"gamma", report.gamma},
            {"alpha1", number(report.alpha1)},
            {"alpha2", number(report.alpha2)},
            {"checks", report.checks},
            {"violations", report.violations},
            {"step_violations", report.step_violations},
            {"alternative_violations", report.alternative_violations},
            {"envelope_violations", report.envelope_violations},
            {"worst_slack", number(report.worst_slack)}};
  if (report.worst_word) j["worst_word"] = format_word(alphabet, *report.worst_word);
  return j;
}

json to_json(const Trajectory& t, const Alphabet& alphabet) {
  json states = json::array();
  for (const auto& x : t.states) {
    json v = json::array();
    for (int i = 0; i < x.size(); ++i) v.push_back(x(i));
    states.push_back(std::move(v));
  }
  return {{"word", t.word}, {"word_text", format_word(alphabet, t.word)}, {"states", states}};
}

}  // namespace pclyap::io
