#include <gtest/gtest.h>

#include "pclyap/automaton.h"
#include "pclyap/error.h"
#include "pclyap/observer.h"
#include "test_support.h"

namespace pclyap {
namespace {

using testing::ab;

std::vector<Word> all_words(const Alphabet& s, std::size_t max_len) {
  std::vector<Word> out{{}};
  for (std::size_t begin = 0; begin < out.size(); ++begin) {
    if (out[begin].size() == max_len) continue;
    for (const auto& h : s.symbols()) {
      auto w = out[begin];
      w.push_back(h);
      out.push_back(std::move(w));
    }
  }
  return out;
}

bool has_prefix(const Word& w, const Word& stem) {
  const std::size_t k = std::min(w.size(), stem.size());
  return std::equal(w.begin(), w.begin() + k, stem.begin());
}

Automaton empty_language() {
  return Automaton(LabeledGraph(ab(), {"q"}, std::vector<Edge>{}), {0}, {});
}

TEST(PrefixClass, MembershipMatchesDefinition) {
  for (const Word& stem : {Word{}, Word{"a"}, Word{"a", "b"}, Word{"b", "b", "a"}}) {
    const auto a = prefix_class_automaton(ab(), stem);
    for (const auto& w : all_words(ab(), 5)) {
      EXPECT_EQ(accepts(a, w), has_prefix(w, stem)) << format_word(ab(), w);
    }
  }
}

TEST(PrefixClass, EmptyStemIsUniversal) {
  const auto a = prefix_class_automaton(ab(), {});
  EXPECT_EQ(a.graph().node_count(), 1u);
  EXPECT_TRUE(is_universal(a));
}

TEST(Accepts, Examples) {
  EXPECT_TRUE(accepts(prefix_class_automaton(ab(), {"a", "b"}), {"a", "b", "b"}));
  EXPECT_FALSE(accepts(empty_language(), {}));
  EXPECT_FALSE(accepts(empty_language(), {"a"}));
  EXPECT_THROW(accepts(empty_language(), {"c"}), InvalidInput);
}

TEST(Accepts, ObserverLanguageOfSingleton) {
  const auto obs = observer_graph(de_bruijn(ab(), 1));
  EXPECT_TRUE(accepts(language_of_observer_node(obs, "{[a]}"), {"a"}));
}

TEST(PrependSymbol, Examples) {
  const auto aab = prefix_class_automaton(ab(), {"a", "a", "b"});
  const auto prepended = prepend_symbol("a", prefix_class_automaton(ab(), {"a", "b"}));
  for (const auto& w : all_words(ab(), 4)) {
    const bool expected = !w.empty() && accepts(aab, w);
    EXPECT_EQ(accepts(prepended, w), expected) << format_word(ab(), w);
  }

  const auto nothing = prepend_symbol("b", empty_language());
  for (const auto& w : all_words(ab(), 4)) EXPECT_FALSE(accepts(nothing, w));

  const auto starts_a = prepend_symbol("a", prefix_class_automaton(ab(), {}));
  for (const auto& w : all_words(ab(), 4)) {
    EXPECT_EQ(accepts(starts_a, w), !w.empty() && w[0] == "a");
  }
}

TEST(LanguageIncludes, Examples) {
  const auto aab = prefix_class_automaton(ab(), {"a", "a", "b"});
  const auto aa = prefix_class_automaton(ab(), {"a", "a"});
  EXPECT_TRUE(language_includes(aab, aa));
  EXPECT_FALSE(language_includes(aa, aab));
  // "aa" agrees with aab wherever defined, so the shortest witness is "aaa".
  EXPECT_TRUE(accepts(aab, {"a", "a"}));
  EXPECT_EQ(inclusion_counterexample(aa, aab), (Word{"a", "a", "a"}));
  EXPECT_TRUE(language_includes(aa, aa));
  EXPECT_TRUE(language_includes(empty_language(), aa));
}

TEST(LanguageIncludes, AgreesWithClosedForm) {
  const auto words = all_words(ab(), 3);
  for (const auto& sub : words) {
    for (const auto& sup : words) {
      EXPECT_EQ(language_includes(prefix_class_automaton(ab(), sub),
                                  prefix_class_automaton(ab(), sup)),
                has_prefix(sub, sup) && sub.size() >= sup.size());
    }
  }
}

TEST(IsUniversal, Examples) {
  const auto a = prefix_class_automaton(ab(), {"a"});
  const auto b = prefix_class_automaton(ab(), {"b"});
  const auto aa = prefix_class_automaton(ab(), {"a", "a"});
  const auto abb = prefix_class_automaton(ab(), {"a", "b"});
  EXPECT_TRUE(is_universal(union_of({a, b})));
  EXPECT_FALSE(is_universal(union_of({aa, abb})));
  EXPECT_EQ(non_universality_witness(union_of({aa, abb})), Word{"b"});
  EXPECT_TRUE(is_universal(union_of({aa, abb, b})));
}

TEST(Automaton, RejectsEmptyInitialSet) {
  EXPECT_THROW(Automaton(LabeledGraph(ab(), {"q"}, std::vector<Edge>{}), {}, {0}), InvalidInput);
}

TEST(Automaton, StateCap) {
  EXPECT_THROW(language_includes(prefix_class_automaton(ab(), {"a", "a", "a"}),
                                 prefix_class_automaton(ab(), {"a", "a"}), 1),
               ResourceLimit);
}

}  // namespace
}  // namespace pclyap
