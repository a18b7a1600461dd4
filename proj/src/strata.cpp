#include "emostrat/strata.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "emostrat/error.hpp"

namespace emostrat {

std::string EmotionSequence::to_string() const {
  std::string out;
  out.reserve(labels.size() * 2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) out += '-';
    out += static_cast<char>('0' + code(labels[i]));
  }
  return out;
}

EmotionSequence EmotionSequence::parse(std::string_view text) {
  EmotionSequence seq;
  while (true) {
    auto dash = text.find('-');
    auto field = text.substr(0, dash);
    int value = -1;
    auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() ||
        ptr != field.data() + field.size()) {
      throw ParseError("bad emotion sequence '" + std::string(text) + "'");
    }
    seq.labels.push_back(emotion_from_code(value));
    if (dash == std::string_view::npos) break;
    text.remove_prefix(dash + 1);
  }
  return seq;
}

EmotionSequence emotion_sequence(const Dialogue& dialogue) {
  // Turns are validated to be in increasing index order already.
  EmotionSequence seq;
  seq.labels.reserve(dialogue.turns.size());
  for (const auto& turn : dialogue.turns) {
    if (turn.speaker == Speaker::User && turn.emotion) {
      seq.labels.push_back(turn.emotion->final_label);
    }
  }
  return seq;
}

std::size_t FrequencyTable::count(const EmotionSequence& seq) const {
  auto it = entries.find(seq);
  return it == entries.end() ? 0 : it->second;
}

FrequencyTable build_frequency_table(const Corpus& corpus) {
  FrequencyTable table;
  for (const auto& d : corpus.dialogues) {
    ++table.entries[emotion_sequence(d)];
    ++table.total;
  }
  return table;
}

std::string format_frequency_csv(const FrequencyTable& table) {
  std::string out = "sequence,count\n";
  for (const auto& [seq, count] : table.entries) {
    out += seq.to_string();
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

std::set<std::string> StrataSplit::frequent_ids() const {
  std::set<std::string> ids;
  for (const auto& [seq, members] : frequent) {
    ids.insert(members.begin(), members.end());
  }
  return ids;
}

std::size_t StrataSplit::frequent_count() const {
  std::size_t n = 0;
  for (const auto& [seq, members] : frequent) n += members.size();
  return n;
}

StrataSplit split_by_frequency(const Corpus& corpus,
                               const FrequencyTable& table,
                               std::int64_t threshold) {
  if (threshold < 0) {
    throw std::invalid_argument("frequency threshold must be non-negative");
  }
  StrataSplit out;
  out.threshold = threshold;
  const auto limit = static_cast<std::size_t>(threshold);
  for (const auto& d : corpus.dialogues) {
    auto seq = emotion_sequence(d);
    const auto count = table.count(seq);
    if (count == 0) {
      throw ParseError("frequency table does not match corpus: sequence " +
                       seq.to_string() + " of dialogue '" + d.id +
                       "' is missing");
    }
    if (count > limit) {
      out.frequent[std::move(seq)].push_back(d.id);
    } else {
      out.non_frequent.push_back(d.id);
    }
  }
  for (auto& [seq, ids] : out.frequent) std::sort(ids.begin(), ids.end());
  std::sort(out.non_frequent.begin(), out.non_frequent.end());
  return out;
}

}  // namespace emostrat
