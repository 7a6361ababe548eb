#pragma once

#include <optional>
#include <vector>

#include "pclyap/graph.h"

namespace pclyap {

/// Default cap on determinized states for inclusion and universality.
inline constexpr std::size_t kDefaultAutomatonStateCap = std::size_t{1} << 16;

/// Nondeterministic finite automaton without ε-moves.
///
/// A word is accepted iff some path from an initial node reading it ends in
/// an accepting node; ε is accepted iff an initial node is accepting.
class Automaton {
 public:
  Automaton(LabeledGraph graph, std::vector<NodeIndex> initial,
            std::vector<NodeIndex> accepting);

  const LabeledGraph& graph() const { return graph_; }
  const Alphabet& alphabet() const { return graph_.alphabet(); }
  const std::vector<NodeIndex>& initial() const { return initial_; }
  const std::vector<NodeIndex>& accepting() const { return accepting_; }
  bool is_accepting(NodeIndex n) const { return accepting_mask_.at(n) != 0; }

 private:
  LabeledGraph graph_;
  std::vector<NodeIndex> initial_;
  std::vector<NodeIndex> accepting_;
  std::vector<char> accepting_mask_;
};

/// Chain q0 -i1-> q1 ... -iK-> qK, every state accepting, q0 initial and
/// qK looping on every symbol. Recognizes the prefix class [stem]; the empty
/// stem gives S*.
Automaton prefix_class_automaton(const Alphabet& alphabet, const Word& stem);

/// Throws InvalidInput when the word uses a symbol outside the alphabet.
bool accepts(const Automaton& a, const Word& word);

/// Recognizes { h w : w in L(a) }.
Automaton prepend_symbol(const std::string& h, const Automaton& a);

/// Disjoint union; member i's nodes are renamed "i:<id>".
Automaton union_of(const std::vector<Automaton>& members);

/// A word in L(sub) \ L(sup), or nullopt when L(sub) ⊆ L(sup).
/// Only `sup` is determinized.
std::optional<Word> inclusion_counterexample(
    const Automaton& sub, const Automaton& sup,
    std::size_t max_states = kDefaultAutomatonStateCap);

bool language_includes(const Automaton& sub, const Automaton& sup,
                       std::size_t max_states = kDefaultAutomatonStateCap);

/// A word outside L(a), or nullopt when L(a) = S*.
std::optional<Word> non_universality_witness(
    const Automaton& a, std::size_t max_states = kDefaultAutomatonStateCap);

bool is_universal(const Automaton& a,
                  std::size_t max_states = kDefaultAutomatonStateCap);

}  // namespace pclyap
