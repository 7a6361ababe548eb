#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pclyap/automaton.h"
#include "pclyap/covering.h"
#include "pclyap/graph.h"
#include "pclyap/lyapunov.h"
#include "pclyap/observer.h"
#include "pclyap/sdp.h"
#include "pclyap/simulate.h"

namespace pclyap::io {

using nlohmann::json;

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& value);

/// Throws InvalidInput if `j` has keys outside `allowed` or is not an object.
void require_keys(const json& j, std::initializer_list<std::string_view> allowed,
                  std::string_view what);

Eigen::MatrixXd matrix_from_json(const json& j);
json matrix_to_json(const Eigen::MatrixXd& m);

// {"alphabet": [...], "nodes": [...], "edges": [[source, dest, label], ...]}
json to_json(const LabeledGraph& g);
/// `extra` names keys that the enclosing format adds next to the graph keys.
LabeledGraph graph_from_json(const json& j,
                             std::initializer_list<std::string_view> extra = {});

// graph keys plus "initial" and "accepting"
json to_json(const Automaton& a);
Automaton automaton_from_json(const json& j);

// graph keys plus "root" and "subsets" (node id -> base node ids); "base"
// holds the base graph.
json to_json(const ObserverGraph& obs);
ObserverGraph observer_from_json(const json& j);

// {"alphabet": [...], "members": [{"name", "stem"} | {"name", "automaton"}]}
json to_json(const CoveringFamily& c);
CoveringFamily covering_from_json(const json& j);
json to_json(const CoveringFamily& c, const CoveringReport& report);

// {"alphabet": [...], "dimension": n, "modes": {symbol: matrix}}
json to_json(const SwitchedLinearSystem& sys);
SwitchedLinearSystem system_from_json(const json& j);

// graph keys plus "rho", "P" (node id -> matrix), "margin"
json to_json(const QuadraticCertificate& cert);
QuadraticCertificate certificate_from_json(const json& j);

// {"rho_upper", "rho_infeasible", "tolerance", "trace": [[rho, t], ...],
//  "certificate"}
json to_json(const JsrBoundResult& result);

// {"members": {name: {"sources": [...], "P": [matrix, ...]}}}
json to_json(const MaxQuadraticFunction& w);
MaxQuadraticFunction max_quadratic_from_json(const json& j);

json to_json(const VerificationReport& report, double rho);
json to_json(const Alphabet& alphabet, const JsrLowerBound& bound);
json to_json(const Alphabet& alphabet, const DecreaseReport& report);
json to_json(const Trajectory& t, const Alphabet& alphabet);

}  // namespace pclyap::io
