#pragma once

#include <string>
#include <vector>

#include "pclyap/automaton.h"
#include "pclyap/graph.h"

namespace pclyap {

/// Deterministic, complete graph whose nodes are the node subsets reached
/// by reading words from the full node set of a path-complete base graph.
struct ObserverGraph {
  LabeledGraph base;
  /// Node ids are "{m1,m2,...}" with member ids sorted as strings.
  LabeledGraph graph;
  NodeIndex root = 0;
  /// Base node indices of every observer node, ascending.
  std::vector<std::vector<NodeIndex>> subsets;

  std::vector<std::string> subset_names(NodeIndex observer_node) const;
};

std::string observer_node_name(const LabeledGraph& base,
                               const std::vector<NodeIndex>& subset);

/// Breadth-first subset construction from the full node set, symbols in
/// alphabet order. Throws NotPathComplete, with the unreadable word most
/// recent symbol first, if the empty subset is reachable.
ObserverGraph observer_graph(const LabeledGraph& g,
                             std::size_t max_subsets = kDefaultGraphSubsetCap);

/// The closed strongly connected component of the observer reachable from
/// its root. Throws InternalInvariant when it is not unique or not closed.
LabeledGraph observer_core(const ObserverGraph& obs);

/// Strongly connected components (Tarjan), each listed in discovery order;
/// components come out in reverse topological order.
std::vector<std::vector<NodeIndex>> strongly_connected_components(
    const LabeledGraph& g);

/// Automaton on the dual observer with `node` initial and the root as the
/// sole accepting state. Its language holds the words, most recent symbol
/// first, whose observer state is `node`.
Automaton language_of_observer_node(const ObserverGraph& obs, NodeIndex node);
Automaton language_of_observer_node(const ObserverGraph& obs,
                                    const std::string& node);

}  // namespace pclyap
