#include "pclyap/observer.h"

#include <algorithm>

#include "pclyap/error.h"

namespace pclyap {

std::string observer_node_name(const LabeledGraph& base,
                               const std::vector<NodeIndex>& subset) {
  std::vector<std::string> names;
  names.reserve(subset.size());
  for (NodeIndex n : subset) names.push_back(base.node(n));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ',';
    out += names[i];
  }
  return out + "}";
}

std::vector<std::string> ObserverGraph::subset_names(NodeIndex observer_node) const {
  std::vector<std::string> out;
  for (NodeIndex n : subsets.at(observer_node)) out.push_back(base.node(n));
  return out;
}

ObserverGraph observer_graph(const LabeledGraph& g, std::size_t max_subsets) {
  std::vector<NodeIndex> all(g.node_count());
  for (NodeIndex i = 0; i < all.size(); ++i) all[i] = i;
  auto sub = subset_construction(g, std::move(all), max_subsets, true);
  if (auto empty = sub.empty_state()) {
    auto labels = sub.path_to(*empty);
    if (labels.empty()) labels.push_back(0);
    std::reverse(labels.begin(), labels.end());
    throw NotPathComplete(g.alphabet().names(labels));
  }

  std::vector<std::string> names;
  names.reserve(sub.size());
  for (const auto& s : sub.subsets) names.push_back(observer_node_name(g, s));
  std::vector<Edge> edges;
  for (std::size_t s = 0; s < sub.size(); ++s) {
    for (SymbolIndex h = 0; h < g.alphabet().size(); ++h) {
      edges.push_back({s, sub.step(s, h), h});
    }
  }
  return ObserverGraph{g, LabeledGraph(g.alphabet(), std::move(names), std::move(edges)),
                       0, std::move(sub.subsets)};
}

std::vector<std::vector<NodeIndex>> strongly_connected_components(
    const LabeledGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<NodeIndex>> out_adj(n);
  for (const auto& e : g.edges()) out_adj[e.source].push_back(e.dest);

  constexpr std::size_t kUnvisited = SIZE_MAX;
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<NodeIndex> stack;
  std::vector<std::vector<NodeIndex>> components;
  std::size_t counter = 0;

  // Iterative Tarjan: frames hold (vertex, next successor position).
  std::vector<std::pair<NodeIndex, std::size_t>> frames;
  for (NodeIndex start = 0; start < n; ++start) {
    if (index[start] != kUnvisited) continue;
    frames.emplace_back(start, 0);
    index[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < out_adj[v].size()) {
        const NodeIndex w = out_adj[v][pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const NodeIndex done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const NodeIndex up = frames.back().first;
        low[up] = std::min(low[up], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<NodeIndex> component;
        NodeIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          component.push_back(w);
        } while (w != done);
        std::reverse(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  return components;
}

LabeledGraph observer_core(const ObserverGraph& obs) {
  const auto& g = obs.graph;
  const auto components = strongly_connected_components(g);
  std::vector<std::size_t> component_of(g.node_count());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (NodeIndex n : components[c]) component_of[n] = c;
  }
  std::vector<char> closed(components.size(), 1);
  for (const auto& e : g.edges()) {
    if (component_of[e.source] != component_of[e.dest]) closed[component_of[e.source]] = 0;
  }
  // Every observer node is reachable from the root, so each closed
  // component is a candidate.
  std::vector<std::size_t> terminal;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (closed[c]) terminal.push_back(c);
  }
  if (terminal.size() != 1) {
    throw InternalInvariant("observer has " + std::to_string(terminal.size()) +
                            " closed strongly connected components, expected 1");
  }
  auto members = components[terminal.front()];
  std::sort(members.begin(), members.end());
  std::vector<NodeIndex> remap(g.node_count(), SIZE_MAX);
  std::vector<std::string> names;
  for (NodeIndex n : members) {
    remap[n] = names.size();
    names.push_back(g.node(n));
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (remap[e.source] == SIZE_MAX) continue;
    if (remap[e.dest] == SIZE_MAX) {
      throw InternalInvariant("observer core is not closed under " +
                              g.alphabet().symbol(e.label));
    }
    edges.push_back({remap[e.source], remap[e.dest], e.label});
  }
  LabeledGraph core(g.alphabet(), std::move(names), std::move(edges));
  if (!is_complete(core) || !is_deterministic(core)) {
    throw InternalInvariant("observer core is not complete and deterministic");
  }
  return core;
}

Automaton language_of_observer_node(const ObserverGraph& obs, NodeIndex node) {
  if (node >= obs.graph.node_count()) {
    throw InvalidInput("observer node index out of range");
  }
  return Automaton(dual(obs.graph), {node}, {obs.root});
}

Automaton language_of_observer_node(const ObserverGraph& obs,
                                    const std::string& node) {
  auto index = obs.graph.find_node(node);
  if (!index) throw InvalidInput("unknown observer node '" + node + "'");
  return language_of_observer_node(obs, *index);
}

}  // namespace pclyap
