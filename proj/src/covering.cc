#include "pclyap/covering.h"

#include "pclyap/error.h"

namespace pclyap {

std::optional<std::size_t> CoveringFamily::find(const std::string& name) const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

void check_family(const CoveringFamily& c) {
  if (c.members.empty()) throw InvalidInput("covering family has no members");
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (!(c.members[i].language.alphabet() == c.alphabet)) {
      throw InvalidInput("member '" + c.members[i].name +
                         "' is over a different alphabet");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (c.members[i].name == c.members[j].name) {
        throw InvalidInput("duplicate member name '" + c.members[i].name + "'");
      }
    }
  }
}

}  // namespace

ContainmentTable containment_table(const CoveringFamily& c,
                                   std::size_t max_states) {
  check_family(c);
  const std::size_t m = c.members.size();
  ContainmentTable table(m, std::vector<std::vector<std::size_t>>(c.alphabet.size()));
  for (std::size_t b = 0; b < m; ++b) {
    for (SymbolIndex h = 0; h < c.alphabet.size(); ++h) {
      const auto shifted = prepend_symbol(c.alphabet.symbol(h), c.members[b].language);
      for (std::size_t target = 0; target < m; ++target) {
        if (language_includes(shifted, c.members[target].language, max_states)) {
          table[b][h].push_back(target);
        }
      }
    }
  }
  return table;
}

namespace {

CoveringReport validate_with(const CoveringFamily& c, const ContainmentTable& table,
                             std::size_t max_states) {
  CoveringReport report;
  std::vector<Automaton> languages;
  for (const auto& member : c.members) languages.push_back(member.language);
  report.uncovered_word = non_universality_witness(union_of(languages), max_states);
  report.covers = !report.uncovered_word.has_value();

  report.closed = true;
  for (std::size_t b = 0; b < table.size() && report.closed; ++b) {
    for (SymbolIndex h = 0; h < c.alphabet.size(); ++h) {
      if (table[b][h].empty()) {
        report.closed = false;
        report.unclosed = std::make_pair(b, h);
        break;
      }
    }
  }
  return report;
}

}  // namespace

CoveringReport validate_covering(const CoveringFamily& c, std::size_t max_states) {
  return validate_with(c, containment_table(c, max_states), max_states);
}

CoveringFamily prefix_covering(const Alphabet& alphabet,
                               const std::vector<Word>& stems) {
  CoveringFamily family{alphabet, {}};
  for (const auto& stem : stems) {
    family.members.push_back({prefix_class_name(alphabet, stem),
                              prefix_class_automaton(alphabet, stem), stem});
  }
  const auto report = validate_covering(family);
  if (!report.covers) {
    throw InvalidInput("prefix classes do not cover S*; missing " +
                       format_word(alphabet, *report.uncovered_word));
  }
  if (!report.closed) {
    const auto [b, h] = *report.unclosed;
    throw InvalidInput("no member contains " + alphabet.symbol(h) + "·" +
                       family.members[b].name);
  }
  return family;
}

bool prefix_class_includes(const Word& sub, const Word& sup) {
  if (sup.size() > sub.size()) return false;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    if (sub[i] != sup[i]) return false;
  }
  return true;
}

CoveringGraph covering_to_graph(const CoveringFamily& c, std::size_t max_states) {
  const auto table = containment_table(c, max_states);
  const auto report = validate_with(c, table, max_states);
  if (!report.covers) {
    throw InvalidInput("not a covering family: union misses " +
                       format_word(c.alphabet, *report.uncovered_word));
  }
  if (!report.closed) {
    const auto [b, h] = *report.unclosed;
    throw InvalidInput("not a covering family: no member contains " +
                       c.alphabet.symbol(h) + "·" + c.members[b].name);
  }
  std::vector<std::string> names;
  std::vector<std::size_t> member;
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    names.push_back(c.members[i].name);
    member.push_back(i);
  }
  std::vector<Edge> edges;
  for (std::size_t b = 0; b < table.size(); ++b) {
    for (SymbolIndex h = 0; h < c.alphabet.size(); ++h) {
      for (std::size_t target : table[b][h]) edges.push_back({b, target, h});
    }
  }
  return {LabeledGraph(c.alphabet, std::move(names), std::move(edges)),
          std::move(member)};
}

CoveringFamily observer_to_covering(const ObserverGraph& obs) {
  CoveringFamily family{obs.graph.alphabet(), {}};
  for (NodeIndex p = 0; p < obs.graph.node_count(); ++p) {
    family.members.push_back(
        {obs.graph.node(p), language_of_observer_node(obs, p), std::nullopt});
  }
  return family;
}

CoveringFamily observer_to_covering(const LabeledGraph& g, std::size_t max_subsets) {
  return observer_to_covering(observer_graph(g, max_subsets));
}

}  // namespace pclyap
