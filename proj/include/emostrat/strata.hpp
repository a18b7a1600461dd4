#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "emostrat/corpus.hpp"

namespace emostrat {

// Final labels of a dialogue's user turns in turn order. Ordering is
// lexicographic by label code, which fixes stratum iteration order.
struct EmotionSequence {
  std::vector<Emotion> labels;

  auto operator<=>(const EmotionSequence&) const = default;
  bool operator==(const EmotionSequence&) const = default;

  // Dash-joined codes, e.g. "0-0-6".
  std::string to_string() const;
  static EmotionSequence parse(std::string_view text);
};

EmotionSequence emotion_sequence(const Dialogue& dialogue);

struct FrequencyTable {
  std::map<EmotionSequence, std::size_t> entries;
  std::size_t total = 0;

  std::size_t count(const EmotionSequence& seq) const;
};

FrequencyTable build_frequency_table(const Corpus& corpus);

// "sequence,count" header followed by one row per sequence in key order.
std::string format_frequency_csv(const FrequencyTable& table);

// Dialogues whose sequence occurs more than `threshold` times are stratified
// by sequence; the rest are pooled. Id lists are sorted ascending.
struct StrataSplit {
  std::map<EmotionSequence, std::vector<std::string>> frequent;
  std::vector<std::string> non_frequent;
  std::int64_t threshold = 6;

  std::set<std::string> frequent_ids() const;
  std::size_t frequent_count() const;
};

inline constexpr std::int64_t kDefaultThreshold = 6;

// Throws std::invalid_argument for a negative threshold and ParseError
// when the corpus contains a sequence missing from the table.
StrataSplit split_by_frequency(const Corpus& corpus,
                               const FrequencyTable& table,
                               std::int64_t threshold = kDefaultThreshold);

}  // namespace emostrat
