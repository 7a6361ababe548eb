#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pclyap/automaton.h"
#include "pclyap/graph.h"
#include "pclyap/observer.h"

namespace pclyap {

struct CoveringMember {
  std::string name;
  Automaton language;
  /// Set when the member is a prefix class.
  std::optional<Word> stem;
};

/// Finite family of regular languages over one alphabet. Members may
/// overlap; overlapping members produce extra edges in the induced graph.
struct CoveringFamily {
  Alphabet alphabet;
  std::vector<CoveringMember> members;

  std::optional<std::size_t> find(const std::string& name) const;
};

struct CoveringReport {
  /// Union of the members is S*.
  bool covers = false;
  std::optional<Word> uncovered_word;
  /// Every h·B lies inside some member.
  bool closed = false;
  /// (member, symbol) with no member containing h·B.
  std::optional<std::pair<std::size_t, SymbolIndex>> unclosed;

  bool valid() const { return covers && closed; }
};

/// containment[b][h] lists every member C with h·B ⊆ C, in member order.
using ContainmentTable = std::vector<std::vector<std::vector<std::size_t>>>;

ContainmentTable containment_table(
    const CoveringFamily& c, std::size_t max_states = kDefaultAutomatonStateCap);

CoveringReport validate_covering(
    const CoveringFamily& c, std::size_t max_states = kDefaultAutomatonStateCap);

/// Builds a family of prefix classes named "[stem]" and validates it.
/// Throws InvalidInput when the stems do not form a covering family.
CoveringFamily prefix_covering(const Alphabet& alphabet,
                               const std::vector<Word>& stems);

/// Closed-form containment for prefix classes: [h·sub] ⊆ [sup] iff sup is a
/// prefix of h·sub.
bool prefix_class_includes(const Word& sub, const Word& sup);

struct CoveringGraph {
  /// Node i corresponds to member i and carries its name.
  LabeledGraph graph;
  /// member[node] is the covering member index of each node.
  std::vector<std::size_t> member;
};

/// One node per member and an edge (B, C, h) for every C with h·B ⊆ C.
/// Throws InvalidInput when the family is not a valid covering.
CoveringGraph covering_to_graph(
    const CoveringFamily& c, std::size_t max_states = kDefaultAutomatonStateCap);

/// The family {B_P} indexed by the observer nodes of a path-complete graph,
/// member names being observer node ids. Propagates NotPathComplete.
CoveringFamily observer_to_covering(
    const LabeledGraph& g, std::size_t max_subsets = kDefaultGraphSubsetCap);
CoveringFamily observer_to_covering(const ObserverGraph& obs);

}  // namespace pclyap
