#include "pclyap/graph.h"

#include <algorithm>
#include <deque>
#include <map>

#include "pclyap/error.h"

namespace pclyap {

NotPathComplete::NotPathComplete(std::vector<std::string> witness)
    : Error([&] {
        std::string msg = "graph is not path-complete; unreadable word:";
        for (const auto& s : witness) msg += " " + s;
        return msg;
      }()),
      witness_(std::move(witness)) {}

Alphabet::Alphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidInput("alphabet must be nonempty");
  for (SymbolIndex i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw InvalidInput("symbol names must be nonempty");
    if (!lookup_.emplace(symbols_[i], i).second) {
      throw InvalidInput("duplicate symbol '" + symbols_[i] + "'");
    }
  }
}

std::optional<SymbolIndex> Alphabet::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

SymbolIndex Alphabet::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InvalidInput("symbol '" + std::string(name) + "' not in alphabet");
}

std::vector<SymbolIndex> Alphabet::indices(const Word& word) const {
  std::vector<SymbolIndex> out;
  out.reserve(word.size());
  for (const auto& s : word) out.push_back(index(s));
  return out;
}

Word Alphabet::names(std::span<const SymbolIndex> word) const {
  Word out;
  out.reserve(word.size());
  for (SymbolIndex i : word) out.push_back(symbol(i));
  return out;
}

bool Alphabet::compact() const {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
  if (word.empty()) return "ε";
  std::string out;
  const bool compact = alphabet.compact();
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0 && !compact) out += ',';
    out += word[i];
  }
  return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word out;
  if (text.empty() || text == "ε") return out;
  if (text.find(',') == std::string_view::npos && alphabet.compact()) {
    for (char c : text) out.push_back(alphabet.symbol(alphabet.index(std::string(1, c))));
    return out;
  }
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    auto piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                   : comma - pos);
    out.push_back(alphabet.symbol(alphabet.index(piece)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

LabeledGraph::LabeledGraph(Alphabet alphabet, std::vector<std::string> nodes,
                           std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)) {
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    if (!lookup_.emplace(nodes_[i], i).second) {
      throw InvalidInput("duplicate node id '" + nodes_[i] + "'");
    }
  }
  for (const auto& e : edges_) {
    if (e.source >= nodes_.size() || e.dest >= nodes_.size()) {
      throw InvalidInput("edge endpoint out of range");
    }
    if (e.label >= alphabet_.size()) throw InvalidInput("edge label out of range");
  }
  index_edges();
}

namespace {

std::vector<Edge> resolve(const Alphabet& alphabet,
                          const std::vector<std::string>& nodes,
                          const std::vector<NamedEdge>& named) {
  std::unordered_map<std::string, NodeIndex> lookup;
  for (NodeIndex i = 0; i < nodes.size(); ++i) lookup.emplace(nodes[i], i);
  auto node = [&](const std::string& id) {
    auto it = lookup.find(id);
    if (it == lookup.end()) {
      throw InvalidInput("edge endpoint '" + id + "' is not a node");
    }
    return it->second;
  };
  std::vector<Edge> edges;
  edges.reserve(named.size());
  for (const auto& e : named) {
    edges.push_back({node(e.source), node(e.dest), alphabet.index(e.label)});
  }
  return edges;
}

}  // namespace

LabeledGraph::LabeledGraph(Alphabet alphabet, std::vector<std::string> nodes,
                           const std::vector<NamedEdge>& edges)
    : LabeledGraph(alphabet, nodes, resolve(alphabet, nodes, edges)) {}

void LabeledGraph::index_edges() {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.source, a.label, a.dest) < std::tie(b.source, b.label, b.dest);
  });
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  adjacency_.assign(nodes_.size() * alphabet_.size(), {});
  for (const auto& e : edges_) {
    adjacency_[e.source * alphabet_.size() + e.label].push_back(e.dest);
  }
}

std::optional<NodeIndex> LabeledGraph::find_node(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

NodeIndex LabeledGraph::node_index(std::string_view name) const {
  if (auto i = find_node(name)) return *i;
  throw InvalidInput("unknown node '" + std::string(name) + "'");
}

std::span<const NodeIndex> LabeledGraph::successors(NodeIndex node,
                                                    SymbolIndex label) const {
  return adjacency_.at(node * alphabet_.size() + label);
}

bool LabeledGraph::has_edge(const Edge& e) const {
  if (e.source >= nodes_.size() || e.label >= alphabet_.size()) return false;
  auto succ = successors(e.source, e.label);
  return std::find(succ.begin(), succ.end(), e.dest) != succ.end();
}

NamedEdge LabeledGraph::named(const Edge& e) const {
  return {nodes_.at(e.source), nodes_.at(e.dest), alphabet_.symbol(e.label)};
}

bool is_complete(const LabeledGraph& g) {
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    for (SymbolIndex h = 0; h < g.alphabet().size(); ++h) {
      if (g.successors(n, h).empty()) return false;
    }
  }
  return true;
}

bool is_deterministic(const LabeledGraph& g) {
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    for (SymbolIndex h = 0; h < g.alphabet().size(); ++h) {
      if (g.successors(n, h).size() > 1) return false;
    }
  }
  return true;
}

LabeledGraph dual(const LabeledGraph& g) {
  std::vector<Edge> reversed;
  reversed.reserve(g.edges().size());
  for (const auto& e : g.edges()) reversed.push_back({e.dest, e.source, e.label});
  return LabeledGraph(g.alphabet(), g.nodes(), std::move(reversed));
}

std::string prefix_class_name(const Alphabet& alphabet, const Word& stem) {
  if (stem.empty()) return "S*";
  return "[" + format_word(alphabet, stem) + "]";
}

LabeledGraph de_bruijn(const Alphabet& alphabet, int order) {
  if (order < 1) throw InvalidInput("order must be >= 1");
  const std::size_t s = alphabet.size();
  std::size_t count = 1;
  for (int k = 0; k < order; ++k) {
    if (count > kDefaultGraphSubsetCap / s) {
      throw ResourceLimit("De Bruijn graph too large");
    }
    count *= s;
  }
  // Node i spells its word in base |S|, most significant digit first.
  auto word_of = [&](std::size_t i) {
    std::vector<SymbolIndex> w(order);
    for (int k = order - 1; k >= 0; --k) {
      w[k] = i % s;
      i /= s;
    }
    return w;
  };
  std::vector<std::string> nodes;
  nodes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto w = word_of(i);
    nodes.push_back(prefix_class_name(alphabet, alphabet.names(w)));
  }
  std::vector<Edge> edges;
  edges.reserve(count * s);
  for (std::size_t i = 0; i < count; ++i) {
    for (SymbolIndex h = 0; h < s; ++h) {
      // Shifting h in front drops the last symbol: index = h*|S|^{K-1} + i/|S|.
      edges.push_back({i, h * (count / s) + i / s, h});
    }
  }
  return LabeledGraph(alphabet, std::move(nodes), std::move(edges));
}

std::vector<SymbolIndex> SubsetGraph::path_to(std::size_t state) const {
  std::vector<SymbolIndex> labels;
  while (state != 0) {
    labels.push_back(parent[state].second);
    state = parent[state].first;
  }
  std::reverse(labels.begin(), labels.end());
  return labels;
}

std::optional<std::size_t> SubsetGraph::empty_state() const {
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (subsets[i].empty()) return i;
  }
  return std::nullopt;
}

SubsetGraph subset_construction(const LabeledGraph& g,
                                std::vector<NodeIndex> start,
                                std::size_t max_subsets, bool stop_at_empty) {
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());

  const std::size_t s = g.alphabet().size();
  SubsetGraph out;
  out.alphabet_size = s;
  std::map<std::vector<NodeIndex>, std::size_t> seen;
  seen.emplace(start, 0);
  out.subsets.push_back(std::move(start));
  out.parent.emplace_back(0, 0);

  std::vector<char> mark(g.node_count());
  for (std::size_t state = 0; state < out.subsets.size(); ++state) {
    for (SymbolIndex h = 0; h < s; ++h) {
      std::fill(mark.begin(), mark.end(), 0);
      for (NodeIndex p : out.subsets[state]) {
        for (NodeIndex q : g.successors(p, h)) mark[q] = 1;
      }
      std::vector<NodeIndex> image;
      for (NodeIndex q = 0; q < mark.size(); ++q) {
        if (mark[q]) image.push_back(q);
      }
      auto [it, inserted] = seen.emplace(image, out.subsets.size());
      if (inserted) {
        if (out.subsets.size() >= max_subsets) {
          throw ResourceLimit("subset construction exceeded " +
                              std::to_string(max_subsets) + " subsets");
        }
        out.subsets.push_back(std::move(image));
        out.parent.emplace_back(state, h);
      }
      out.next.push_back(it->second);
      if (inserted && stop_at_empty && out.subsets.back().empty()) {
        return out;
      }
    }
  }
  return out;
}

std::optional<Word> unreadable_word(const LabeledGraph& g,
                                    std::size_t max_subsets) {
  std::vector<NodeIndex> all(g.node_count());
  for (NodeIndex i = 0; i < all.size(); ++i) all[i] = i;
  auto sub = subset_construction(g, std::move(all), max_subsets, true);
  auto empty = sub.empty_state();
  if (!empty) return std::nullopt;
  auto labels = sub.path_to(*empty);
  if (labels.empty()) labels.push_back(0);  // no nodes at all
  std::reverse(labels.begin(), labels.end());
  return g.alphabet().names(labels);
}

bool is_path_complete(const LabeledGraph& g, std::size_t max_subsets) {
  return !unreadable_word(g, max_subsets).has_value();
}

}  // namespace pclyap
