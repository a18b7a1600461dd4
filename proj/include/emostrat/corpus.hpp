#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emostrat/emotion.hpp"

namespace emostrat {

enum class Speaker { User, System };

struct EmotionAnnotation {
  Emotion final_label = Emotion::Neutral;
  std::optional<std::array<Emotion, 3>> annotator_labels;
  std::optional<bool> manually_resolved;

  bool operator==(const EmotionAnnotation&) const = default;
};

struct UtteranceRecord {
  std::string dialogue_id;
  std::uint64_t turn_index = 0;
  Speaker speaker = Speaker::User;
  std::optional<std::string> text;
  std::optional<EmotionAnnotation> emotion;

  bool operator==(const UtteranceRecord&) const = default;
};

struct Dialogue {
  std::string id;
  std::vector<UtteranceRecord> turns;

  std::size_t user_turn_count() const;

  bool operator==(const Dialogue&) const = default;
};

// Dialogues keep input order. Nothing downstream relies on that order;
// every deterministic computation sorts explicitly.
struct Corpus {
  std::string source_label;
  std::vector<Dialogue> dialogues;

  std::size_t user_turn_count() const;
  const Dialogue* find(std::string_view id) const;

  bool operator==(const Corpus&) const = default;
};

enum class Rule {
  DuplicateDialogueId,
  TurnDialogueIdMismatch,
  NonIncreasingTurnIndex,
  NoUserTurn,
  UserTurnWithoutEmotion,
  SystemTurnWithEmotion,
};

std::string_view rule_name(Rule rule) noexcept;

struct Violation {
  std::string dialogue_id;
  std::optional<std::uint64_t> turn_index;
  Rule rule;

  std::string describe() const;
  bool operator==(const Violation&) const = default;
};

// Empty iff every structural invariant of the corpus types holds.
std::vector<Violation> validate(const Corpus& corpus);

// Throws ParseError listing the first violation when validation fails.
void require_valid(const Corpus& corpus);

// Count of user turns carrying each final label.
std::array<std::size_t, kNumEmotions> label_counts(const Corpus& corpus);

bool has_annotator_labels(const Corpus& corpus);
bool has_resolution_flags(const Corpus& corpus);

}  // namespace emostrat
