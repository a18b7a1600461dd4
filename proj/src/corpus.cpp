#include "emostrat/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include "emostrat/error.hpp"

namespace emostrat {

std::size_t Dialogue::user_turn_count() const {
  return static_cast<std::size_t>(
      std::count_if(turns.begin(), turns.end(), [](const UtteranceRecord& t) {
        return t.speaker == Speaker::User;
      }));
}

std::size_t Corpus::user_turn_count() const {
  std::size_t n = 0;
  for (const auto& d : dialogues) n += d.user_turn_count();
  return n;
}

const Dialogue* Corpus::find(std::string_view id) const {
  auto it = std::find_if(dialogues.begin(), dialogues.end(),
                         [id](const Dialogue& d) { return d.id == id; });
  return it == dialogues.end() ? nullptr : &*it;
}

std::string_view rule_name(Rule rule) noexcept {
  switch (rule) {
    case Rule::DuplicateDialogueId:
      return "duplicate dialogue id";
    case Rule::TurnDialogueIdMismatch:
      return "turn dialogue_id differs from its dialogue";
    case Rule::NonIncreasingTurnIndex:
      return "turn index not strictly increasing";
    case Rule::NoUserTurn:
      return "dialogue has no user turn";
    case Rule::UserTurnWithoutEmotion:
      return "user turn without emotion";
    case Rule::SystemTurnWithEmotion:
      return "system turn with emotion";
  }
  return "unknown rule";
}

std::string Violation::describe() const {
  std::string out = "dialogue '" + dialogue_id + "'";
  if (turn_index) out += " turn " + std::to_string(*turn_index);
  out += ": ";
  out += rule_name(rule);
  return out;
}

std::vector<Violation> validate(const Corpus& corpus) {
  std::vector<Violation> out;
  std::unordered_set<std::string_view> seen;
  seen.reserve(corpus.dialogues.size());

  for (const auto& dialogue : corpus.dialogues) {
    if (!seen.insert(dialogue.id).second) {
      out.push_back({dialogue.id, std::nullopt, Rule::DuplicateDialogueId});
    }
    bool has_user = false;
    const UtteranceRecord* prev = nullptr;
    for (const auto& turn : dialogue.turns) {
      if (turn.dialogue_id != dialogue.id) {
        out.push_back(
            {dialogue.id, turn.turn_index, Rule::TurnDialogueIdMismatch});
      }
      if (prev != nullptr && turn.turn_index <= prev->turn_index) {
        out.push_back(
            {dialogue.id, turn.turn_index, Rule::NonIncreasingTurnIndex});
      }
      if (turn.speaker == Speaker::User) {
        has_user = true;
        if (!turn.emotion) {
          out.push_back(
              {dialogue.id, turn.turn_index, Rule::UserTurnWithoutEmotion});
        }
      } else if (turn.emotion) {
        out.push_back(
            {dialogue.id, turn.turn_index, Rule::SystemTurnWithEmotion});
      }
      prev = &turn;
    }
    if (!has_user) {
      out.push_back({dialogue.id, std::nullopt, Rule::NoUserTurn});
    }
  }
  return out;
}

void require_valid(const Corpus& corpus) {
  auto violations = validate(corpus);
  if (violations.empty()) return;
  std::string msg = "invalid corpus: " + violations.front().describe();
  if (violations.size() > 1) {
    msg += " (and " + std::to_string(violations.size() - 1) + " more)";
  }
  throw ParseError(msg);
}

std::array<std::size_t, kNumEmotions> label_counts(const Corpus& corpus) {
  std::array<std::size_t, kNumEmotions> counts{};
  for (const auto& d : corpus.dialogues) {
    for (const auto& t : d.turns) {
      if (t.speaker == Speaker::User && t.emotion) {
        ++counts[index(t.emotion->final_label)];
      }
    }
  }
  return counts;
}

namespace {

template <typename Pred>
bool all_user_turns(const Corpus& corpus, Pred pred) {
  for (const auto& d : corpus.dialogues) {
    for (const auto& t : d.turns) {
      if (t.speaker != Speaker::User) continue;
      if (!t.emotion || !pred(*t.emotion)) return false;
    }
  }
  return true;
}

}  // namespace

bool has_annotator_labels(const Corpus& corpus) {
  return all_user_turns(corpus, [](const EmotionAnnotation& a) {
    return a.annotator_labels.has_value();
  });
}

bool has_resolution_flags(const Corpus& corpus) {
  return all_user_turns(corpus, [](const EmotionAnnotation& a) {
    return a.manually_resolved.has_value();
  });
}

}  // namespace emostrat
