#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pclyap {

using SymbolIndex = std::size_t;
using NodeIndex = std::size_t;

/// A finite word as a sequence of symbol names. Index 0 is read first.
using Word = std::vector<std::string>;

/// Default cap on the number of subsets explored by a subset construction
/// over a labeled graph.
inline constexpr std::size_t kDefaultGraphSubsetCap = std::size_t{1} << 20;

/// Ordered, nonempty list of distinct symbol names.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::string& symbol(SymbolIndex i) const { return symbols_.at(i); }

  std::optional<SymbolIndex> find(std::string_view name) const;
  /// Throws InvalidInput for unknown symbols.
  SymbolIndex index(std::string_view name) const;
  std::vector<SymbolIndex> indices(const Word& word) const;
  Word names(std::span<const SymbolIndex> word) const;

  /// True when every symbol is a single character, so words can be printed
  /// without separators.
  bool compact() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, SymbolIndex> lookup_;
};

/// "ab" for compact alphabets, "a,b" otherwise, "ε" for the empty word.
std::string format_word(const Alphabet& alphabet, const Word& word);

/// Accepts comma-separated symbols or, for compact alphabets, a plain
/// string of characters. An empty string is the empty word.
Word parse_word(const Alphabet& alphabet, std::string_view text);

struct Edge {
  NodeIndex source;
  NodeIndex dest;
  SymbolIndex label;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct NamedEdge {
  std::string source;
  std::string dest;
  std::string label;
};

/// Directed multigraph with symbol-labeled edges. Immutable once built;
/// edges are kept sorted by (source, label, dest) with duplicates removed.
class LabeledGraph {
 public:
  LabeledGraph(Alphabet alphabet, std::vector<std::string> nodes,
               std::vector<Edge> edges);
  LabeledGraph(Alphabet alphabet, std::vector<std::string> nodes,
               const std::vector<NamedEdge>& edges);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::string& node(NodeIndex i) const { return nodes_.at(i); }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<NodeIndex> find_node(std::string_view name) const;
  /// Throws InvalidInput for unknown node ids.
  NodeIndex node_index(std::string_view name) const;

  /// Destinations of the edges leaving `node` with the given label.
  std::span<const NodeIndex> successors(NodeIndex node,
                                        SymbolIndex label) const;

  bool has_edge(const Edge& e) const;
  NamedEdge named(const Edge& e) const;

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.alphabet_ == b.alphabet_ && a.nodes_ == b.nodes_ &&
           a.edges_ == b.edges_;
  }

 private:
  void index_edges();

  Alphabet alphabet_;
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, NodeIndex> lookup_;
  std::vector<Edge> edges_;
  // adjacency_[node * |S| + label] lists destinations.
  std::vector<std::vector<NodeIndex>> adjacency_;
};

bool is_complete(const LabeledGraph& g);
bool is_deterministic(const LabeledGraph& g);

/// Same nodes, every edge reversed.
LabeledGraph dual(const LabeledGraph& g);

/// Nodes are the length-`order` words in lexicographic order, named "[w]".
/// Edge ([w], [h w'], h) where w' drops the last symbol of w.
LabeledGraph de_bruijn(const Alphabet& alphabet, int order);

/// Bracketed prefix-class name of a stem: "[ab]", or "S*" for the empty stem.
std::string prefix_class_name(const Alphabet& alphabet, const Word& stem);

/// Result of the subset construction started from one subset of nodes.
///
/// State 0 is the start subset. The empty subset may appear as a state.
struct SubsetGraph {
  std::vector<std::vector<NodeIndex>> subsets;
  /// next[state * |S| + label]
  std::vector<std::size_t> next;
  /// (predecessor state, label) for every state but 0.
  std::vector<std::pair<std::size_t, SymbolIndex>> parent;
  std::size_t alphabet_size = 0;

  std::size_t size() const { return subsets.size(); }
  std::size_t step(std::size_t state, SymbolIndex label) const {
    return next[state * alphabet_size + label];
  }
  /// Labels applied from state 0 to reach `state`, in application order.
  std::vector<SymbolIndex> path_to(std::size_t state) const;
  std::optional<std::size_t> empty_state() const;
};

/// Breadth-first subset construction. Symbols are tried in alphabet order
/// and new subsets are numbered in discovery order. When `stop_at_empty` is
/// set exploration halts as soon as the empty subset is discovered.
SubsetGraph subset_construction(const LabeledGraph& g,
                                std::vector<NodeIndex> start,
                                std::size_t max_subsets,
                                bool stop_at_empty = false);

/// A word (most recent symbol first) that no path of `g` can read, or
/// nullopt when `g` is path-complete.
std::optional<Word> unreadable_word(
    const LabeledGraph& g, std::size_t max_subsets = kDefaultGraphSubsetCap);

bool is_path_complete(const LabeledGraph& g,
                      std::size_t max_subsets = kDefaultGraphSubsetCap);

}  // namespace pclyap
