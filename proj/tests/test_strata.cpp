#include <gtest/gtest.h>

#include <random>

#include "emostrat/error.hpp"
#include "emostrat/strata.hpp"
#include "support/synthetic.hpp"

namespace emostrat {
namespace {

using testing::make_corpus;
using testing::make_dialogue;
using testing::padded_id;

EmotionSequence seq(std::initializer_list<int> codes) {
  EmotionSequence s;
  for (int c : codes) s.labels.push_back(emotion_from_code(c));
  return s;
}

TEST(EmotionSequence, ProjectsUserLabelsInOrder) {
  EXPECT_EQ(emotion_sequence(make_dialogue("a", {0, 0, 6})), seq({0, 0, 6}));
  EXPECT_EQ(emotion_sequence(make_dialogue("b", {1})), seq({1}));
}

TEST(EmotionSequence, SkipsInterleavedSystemTurns) {
  // user 2, system, system, user 5, system, user 0 (read by hand)
  Dialogue d = make_dialogue("c", {2, 5, 0});
  UtteranceRecord extra;
  extra.dialogue_id = "c";
  extra.speaker = Speaker::System;
  extra.turn_index = 1;
  d.turns.insert(d.turns.begin() + 1, extra);
  for (std::size_t i = 0; i < d.turns.size(); ++i) d.turns[i].turn_index = i;
  EXPECT_EQ(emotion_sequence(d), seq({2, 5, 0}));
  EXPECT_EQ(emotion_sequence(d).labels.size(), d.user_turn_count());
}

TEST(EmotionSequence, IndependentOfSystemTurnContent) {
  auto a = make_dialogue("a", {3, 4});
  auto b = a;
  for (auto& t : b.turns) {
    if (t.speaker == Speaker::System) t.text = "something else entirely";
  }
  EXPECT_EQ(emotion_sequence(a), emotion_sequence(b));
}

TEST(EmotionSequence, StringFormAndOrdering) {
  EXPECT_EQ(seq({0, 0, 6}).to_string(), "0-0-6");
  EXPECT_EQ(EmotionSequence::parse("0-0-6"), seq({0, 0, 6}));
  EXPECT_THROW(EmotionSequence::parse("0--6"), ParseError);
  EXPECT_THROW(EmotionSequence::parse("8"), ParseError);
  EXPECT_LT(seq({0, 6}), seq({1}));
  EXPECT_LT(seq({0}), seq({0, 0}));
  EXPECT_LT(seq({0, 5}), seq({0, 6}));
}

TEST(FrequencyTable, SingleSequence) {
  std::vector<Dialogue> ds;
  for (int i = 0; i < 10; ++i) ds.push_back(make_dialogue(padded_id("d", i), {0, 6}));
  const auto t = build_frequency_table(make_corpus(ds));
  ASSERT_EQ(t.entries.size(), 1u);
  EXPECT_EQ(t.count(seq({0, 6})), 10u);
  EXPECT_EQ(t.total, 10u);
}

TEST(FrequencyTable, HandTallyFiveThreeTwo) {
  std::vector<Dialogue> ds;
  int n = 0;
  for (int i = 0; i < 5; ++i) ds.push_back(make_dialogue(padded_id("d", n++), {0}));
  for (int i = 0; i < 3; ++i) ds.push_back(make_dialogue(padded_id("d", n++), {2, 2}));
  for (int i = 0; i < 2; ++i) ds.push_back(make_dialogue(padded_id("d", n++), {0, 6}));
  const auto t = build_frequency_table(make_corpus(ds));
  ASSERT_EQ(t.entries.size(), 3u);
  EXPECT_EQ(t.count(seq({0})), 5u);
  EXPECT_EQ(t.count(seq({2, 2})), 3u);
  EXPECT_EQ(t.count(seq({0, 6})), 2u);
  EXPECT_EQ(t.total, 10u);
  EXPECT_EQ(format_frequency_csv(t), "sequence,count\n0,5\n0-6,2\n2-2,3\n");
}

TEST(FrequencyTable, SingleDialogue) {
  const auto t = build_frequency_table(make_corpus({make_dialogue("x", {4})}));
  ASSERT_EQ(t.entries.size(), 1u);
  EXPECT_EQ(t.entries.begin()->second, 1u);
  EXPECT_EQ(t.total, 1u);
}

Corpus counts_corpus(std::size_t seven_count, std::size_t six_count) {
  std::vector<Dialogue> ds;
  std::size_t n = 0;
  for (std::size_t i = 0; i < seven_count; ++i) {
    ds.push_back(make_dialogue(padded_id("s", n++), {6}));
  }
  for (std::size_t i = 0; i < six_count; ++i) {
    ds.push_back(make_dialogue(padded_id("s", n++), {2}));
  }
  ds.push_back(make_dialogue("unique", {1, 4}));
  return make_corpus(ds);
}

TEST(SplitByFrequency, StrictlyGreaterThanThreshold) {
  const auto corpus = counts_corpus(7, 6);
  const auto split = split_by_frequency(corpus, build_frequency_table(corpus), 6);
  ASSERT_EQ(split.frequent.size(), 1u);
  EXPECT_EQ(split.frequent.begin()->first, seq({6}));
  EXPECT_EQ(split.frequent_count(), 7u);
  EXPECT_EQ(split.non_frequent.size(), 7u);  // six {2} + the unique one
  EXPECT_TRUE(std::is_sorted(split.non_frequent.begin(), split.non_frequent.end()));
}

TEST(SplitByFrequency, ThresholdZeroStratifiesEverything) {
  const auto corpus = counts_corpus(3, 2);
  const auto split = split_by_frequency(corpus, build_frequency_table(corpus), 0);
  EXPECT_TRUE(split.non_frequent.empty());
  EXPECT_EQ(split.frequent_count(), corpus.dialogues.size());
}

TEST(SplitByFrequency, Errors) {
  const auto corpus = counts_corpus(2, 2);
  EXPECT_THROW(split_by_frequency(corpus, build_frequency_table(corpus), -1),
               std::invalid_argument);
  const auto other = build_frequency_table(make_corpus({make_dialogue("z", {5})}));
  EXPECT_THROW(split_by_frequency(corpus, other, 6), ParseError);
}

TEST(SplitByFrequency, PropertiesOnSyntheticCorpora) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto corpus = testing::synthetic_corpus({.dialogues = 600, .seed = seed});
    const auto table = build_frequency_table(corpus);

    std::size_t sum = 0;
    for (const auto& [s, c] : table.entries) {
      EXPECT_GE(c, 1u);
      sum += c;
    }
    EXPECT_EQ(sum, table.total);
    EXPECT_EQ(table.total, corpus.dialogues.size());

    std::set<std::string> prev_frequent;
    for (std::int64_t threshold = 20; threshold >= 0; --threshold) {
      const auto split = split_by_frequency(corpus, table, threshold);
      const auto frequent = split.frequent_ids();
      EXPECT_EQ(frequent.size() + split.non_frequent.size(),
                corpus.dialogues.size());
      for (const auto& id : split.non_frequent) {
        EXPECT_FALSE(frequent.contains(id));
      }
      for (const auto& [s, ids] : split.frequent) {
        EXPECT_GT(table.count(s), static_cast<std::size_t>(threshold));
        EXPECT_EQ(ids.size(), table.count(s));
      }
      for (const auto& id : split.non_frequent) {
        const auto* d = corpus.find(id);
        ASSERT_NE(d, nullptr);
        EXPECT_LE(table.count(emotion_sequence(*d)),
                  static_cast<std::size_t>(threshold));
      }
      // Lowering the threshold only ever adds frequent dialogues, i.e.
      // raising it never moves a dialogue into the frequent set.
      for (const auto& id : prev_frequent) EXPECT_TRUE(frequent.contains(id));
      prev_frequent = frequent;
    }
  }
}

}  // namespace
}  // namespace emostrat
