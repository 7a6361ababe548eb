#include "pclyap/automaton.h"

#include <algorithm>
#include <map>

#include "pclyap/error.h"

namespace pclyap {

namespace {

std::vector<NodeIndex> sorted_unique(std::vector<NodeIndex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_same_alphabet(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet() == b.alphabet())) {
    throw InvalidInput("automata are over different alphabets");
  }
}

std::string fresh_name(const LabeledGraph& g, const std::string& base) {
  std::string name = base;
  for (int k = 1; g.find_node(name); ++k) name = base + std::to_string(k);
  return name;
}

}  // namespace

Automaton::Automaton(LabeledGraph graph, std::vector<NodeIndex> initial,
                     std::vector<NodeIndex> accepting)
    : graph_(std::move(graph)),
      initial_(sorted_unique(std::move(initial))),
      accepting_(sorted_unique(std::move(accepting))),
      accepting_mask_(graph_.node_count(), 0) {
  if (initial_.empty()) throw InvalidInput("automaton needs an initial state");
  for (NodeIndex n : initial_) {
    if (n >= graph_.node_count()) throw InvalidInput("initial state out of range");
  }
  for (NodeIndex n : accepting_) {
    if (n >= graph_.node_count()) throw InvalidInput("accepting state out of range");
    accepting_mask_[n] = 1;
  }
}

Automaton prefix_class_automaton(const Alphabet& alphabet, const Word& stem) {
  const auto symbols = alphabet.indices(stem);
  const std::size_t k = symbols.size();
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i <= k; ++i) nodes.push_back("q" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i) edges.push_back({i, i + 1, symbols[i]});
  for (SymbolIndex h = 0; h < alphabet.size(); ++h) edges.push_back({k, k, h});
  std::vector<NodeIndex> all(k + 1);
  for (std::size_t i = 0; i <= k; ++i) all[i] = i;
  return Automaton(LabeledGraph(alphabet, std::move(nodes), std::move(edges)),
                   {0}, std::move(all));
}

bool accepts(const Automaton& a, const Word& word) {
  const auto symbols = a.alphabet().indices(word);
  const auto& g = a.graph();
  std::vector<char> current(g.node_count(), 0), next(g.node_count(), 0);
  for (NodeIndex n : a.initial()) current[n] = 1;
  for (SymbolIndex h : symbols) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    for (NodeIndex p = 0; p < g.node_count(); ++p) {
      if (!current[p]) continue;
      for (NodeIndex q : g.successors(p, h)) next[q] = 1, any = true;
    }
    if (!any) return false;
    current.swap(next);
  }
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    if (current[n] && a.is_accepting(n)) return true;
  }
  return false;
}

Automaton prepend_symbol(const std::string& h, const Automaton& a) {
  const auto& g = a.graph();
  const SymbolIndex label = a.alphabet().index(h);
  auto nodes = g.nodes();
  const NodeIndex head = nodes.size();
  nodes.push_back(fresh_name(g, "pre"));
  auto edges = g.edges();
  for (NodeIndex i : a.initial()) edges.push_back({head, i, label});
  return Automaton(LabeledGraph(a.alphabet(), std::move(nodes), std::move(edges)),
                   {head}, a.accepting());
}

Automaton union_of(const std::vector<Automaton>& members) {
  if (members.empty()) throw InvalidInput("union of zero automata");
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  std::vector<NodeIndex> initial, accepting;
  for (std::size_t m = 0; m < members.size(); ++m) {
    require_same_alphabet(members[0], members[m]);
    const auto& g = members[m].graph();
    const NodeIndex offset = nodes.size();
    for (const auto& n : g.nodes()) nodes.push_back(std::to_string(m) + ":" + n);
    for (const auto& e : g.edges()) {
      edges.push_back({e.source + offset, e.dest + offset, e.label});
    }
    for (NodeIndex n : members[m].initial()) initial.push_back(n + offset);
    for (NodeIndex n : members[m].accepting()) accepting.push_back(n + offset);
  }
  return Automaton(LabeledGraph(members[0].alphabet(), std::move(nodes), std::move(edges)),
                   std::move(initial), std::move(accepting));
}

std::optional<Word> inclusion_counterexample(const Automaton& sub,
                                             const Automaton& sup,
                                             std::size_t max_states) {
  require_same_alphabet(sub, sup);
  const auto det = subset_construction(sup.graph(), sup.initial(), max_states);
  std::vector<char> det_accepting(det.size(), 0);
  for (std::size_t s = 0; s < det.size(); ++s) {
    for (NodeIndex n : det.subsets[s]) {
      if (sup.is_accepting(n)) det_accepting[s] = 1;
    }
  }

  // Breadth-first search over (sub state, determinized sup state) pairs.
  const std::size_t sigma = sub.alphabet().size();
  using Pair = std::pair<NodeIndex, std::size_t>;
  std::map<Pair, std::size_t> seen;
  std::vector<Pair> queue;
  std::vector<std::pair<std::size_t, SymbolIndex>> parent;
  for (NodeIndex i : sub.initial()) {
    if (seen.emplace(Pair{i, 0}, queue.size()).second) {
      queue.push_back({i, 0});
      parent.emplace_back(SIZE_MAX, 0);
    }
  }
  for (std::size_t at = 0; at < queue.size(); ++at) {
    const auto [p, d] = queue[at];
    if (sub.is_accepting(p) && !det_accepting[d]) {
      std::vector<SymbolIndex> labels;
      for (std::size_t k = at; parent[k].first != SIZE_MAX; k = parent[k].first) {
        labels.push_back(parent[k].second);
      }
      std::reverse(labels.begin(), labels.end());
      return sub.alphabet().names(labels);
    }
    for (SymbolIndex h = 0; h < sigma; ++h) {
      const std::size_t dn = det.step(d, h);
      for (NodeIndex q : sub.graph().successors(p, h)) {
        if (seen.emplace(Pair{q, dn}, queue.size()).second) {
          queue.push_back({q, dn});
          parent.emplace_back(at, h);
        }
      }
    }
  }
  return std::nullopt;
}

bool language_includes(const Automaton& sub, const Automaton& sup,
                       std::size_t max_states) {
  return !inclusion_counterexample(sub, sup, max_states).has_value();
}

std::optional<Word> non_universality_witness(const Automaton& a,
                                             std::size_t max_states) {
  const auto det = subset_construction(a.graph(), a.initial(), max_states);
  for (std::size_t s = 0; s < det.size(); ++s) {
    const auto& subset = det.subsets[s];
    const bool accepting = std::any_of(subset.begin(), subset.end(),
                                       [&](NodeIndex n) { return a.is_accepting(n); });
    if (!accepting) return a.alphabet().names(det.path_to(s));
  }
  return std::nullopt;
}

bool is_universal(const Automaton& a, std::size_t max_states) {
  return !non_universality_witness(a, max_states).has_value();
}

}  // namespace pclyap
