#include "emostrat/emowoz.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "json_util.hpp"

namespace emostrat {

using detail::child_path;
using ojson = nlohmann::ordered_json;

namespace {

Emotion parse_upstream_label(const ojson& j, const std::string& path) {
  if (j.is_object()) {
    const auto inner_path = child_path(path, "emotion");
    const auto v = detail::require_int(
        detail::require_member(j, "emotion", path), inner_path);
    try {
      return emotion_from_code(v);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " at " + inner_path);
    }
  }
  const auto v = detail::require_int(j, path);
  try {
    return emotion_from_code(v);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()) + " at " + path);
  }
}

// nullopt means "no emotion" (system-turn sentinel).
std::optional<EmotionAnnotation> parse_upstream_emotion(
    const ojson* j, const std::string& path) {
  if (j == nullptr || j->is_null()) return std::nullopt;
  if (j->is_array()) {
    if (j->empty()) return std::nullopt;
    detail::schema_error(path, "integer label, -1, null, [] or object");
  }
  if (j->is_number_integer() || j->is_number_unsigned()) {
    const auto v = detail::require_int(*j, path);
    if (v == -1) return std::nullopt;
    EmotionAnnotation a;
    a.final_label = parse_upstream_label(*j, path);
    return a;
  }
  if (!j->is_object()) {
    detail::schema_error(path, "integer label, -1, null, [] or object");
  }

  static constexpr std::string_view kKeys[] = {"final", "1", "2", "3",
                                               "manually_resolved"};
  detail::reject_unknown_keys(*j, path, kKeys);

  EmotionAnnotation a;
  a.final_label = parse_upstream_label(detail::require_member(*j, "final", path),
                                       child_path(path, "final"));
  static constexpr std::string_view kAnnotators[] = {"1", "2", "3"};
  std::size_t present = 0;
  for (auto key : kAnnotators) present += j->contains(key) ? 1 : 0;
  if (present == 3) {
    std::array<Emotion, 3> labels{};
    for (std::size_t i = 0; i < 3; ++i) {
      labels[i] = parse_upstream_label(j->at(std::string(kAnnotators[i])),
                                       child_path(path, kAnnotators[i]));
    }
    a.annotator_labels = labels;
  } else if (present != 0) {
    detail::schema_error(path, "annotator keys \"1\", \"2\", \"3\" all present "
                               "or all absent");
  }
  if (auto it = j->find("manually_resolved"); it != j->end()) {
    a.manually_resolved =
        detail::require_bool(*it, child_path(path, "manually_resolved"));
  }
  return a;
}

UtteranceRecord make_turn(const std::string& dialogue_id, std::size_t position,
                          std::optional<std::string> text, const ojson* emotion,
                          const std::string& emotion_path) {
  UtteranceRecord turn;
  turn.dialogue_id = dialogue_id;
  turn.turn_index = position;
  turn.speaker = position % 2 == 0 ? Speaker::User : Speaker::System;
  turn.text = std::move(text);
  turn.emotion = parse_upstream_emotion(emotion, emotion_path);
  if (turn.speaker == Speaker::User && !turn.emotion) {
    throw ParseError("schema mismatch at " + emotion_path +
                     ": user turn without emotion label");
  }
  if (turn.speaker == Speaker::System && turn.emotion) {
    throw ParseError("schema mismatch at " + emotion_path +
                     ": system turn carries an emotion label");
  }
  return turn;
}

const ojson* member_or_null(const ojson& obj, std::string_view key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

// {"<id>": {"log": [{"text": ..., "emotion": ...}, ...]}, ...}
void read_keyed_layout(const ojson& root, Corpus& corpus) {
  for (auto it = root.begin(); it != root.end(); ++it) {
    const auto path = child_path("", it.key());
    detail::require_object(*it, path);
    const auto log_path = child_path(path, "log");
    const auto& log =
        detail::require_array(detail::require_member(*it, "log", path), log_path);

    Dialogue dialogue;
    dialogue.id = it.key();
    dialogue.turns.reserve(log.size());
    for (std::size_t i = 0; i < log.size(); ++i) {
      const auto turn_path = child_path(log_path, i);
      const auto& tj = detail::require_object(log[i], turn_path);
      std::optional<std::string> text;
      if (const auto* t = member_or_null(tj, "text")) {
        text = detail::require_string(*t, child_path(turn_path, "text"));
      }
      dialogue.turns.push_back(make_turn(dialogue.id, i, std::move(text),
                                         member_or_null(tj, "emotion"),
                                         child_path(turn_path, "emotion")));
    }
    corpus.dialogues.push_back(std::move(dialogue));
  }
}

// [{"dialogue_id": ..., "log": {"text": [...], "emotion": [...]}}, ...]
void read_columnar_layout(const ojson& root, Corpus& corpus) {
  for (std::size_t d = 0; d < root.size(); ++d) {
    const auto path = child_path("", d);
    const auto& dj = detail::require_object(root[d], path);

    Dialogue dialogue;
    dialogue.id = detail::require_string(
        detail::require_member(dj, "dialogue_id", path),
        child_path(path, "dialogue_id"));
    const auto log_path = child_path(path, "log");
    const auto& log =
        detail::require_object(detail::require_member(dj, "log", path), log_path);
    const auto emo_path = child_path(log_path, "emotion");
    const auto& emotions = detail::require_array(
        detail::require_member(log, "emotion", log_path), emo_path);
    const ojson* texts = member_or_null(log, "text");
    const auto text_path = child_path(log_path, "text");
    if (texts != nullptr) {
      detail::require_array(*texts, text_path);
      if (texts->size() != emotions.size()) {
        detail::schema_error(text_path, "same length as " + emo_path);
      }
    }

    dialogue.turns.reserve(emotions.size());
    for (std::size_t i = 0; i < emotions.size(); ++i) {
      std::optional<std::string> text;
      if (texts != nullptr) {
        text = detail::require_string((*texts)[i], child_path(text_path, i));
      }
      dialogue.turns.push_back(make_turn(dialogue.id, i, std::move(text),
                                         &emotions[i], child_path(emo_path, i)));
    }
    corpus.dialogues.push_back(std::move(dialogue));
  }
}

}  // namespace

EmowozImport parse_emowoz(std::string_view document,
                          const std::optional<SplitLists>& split_lists,
                          std::string source_label) {
  const auto root = detail::parse_json<ojson>(document, "EmoWOZ document");

  EmowozImport out;
  out.corpus.source_label = std::move(source_label);
  if (root.is_object()) {
    read_keyed_layout(root, out.corpus);
  } else if (root.is_array()) {
    read_columnar_layout(root, out.corpus);
  } else {
    detail::schema_error("", "object keyed by dialogue id or array of dialogues");
  }

  require_valid(out.corpus);
  if (split_lists) {
    out.original_partition = partition_from_lists(out.corpus, *split_lists);
  }
  return out;
}

Partition partition_from_lists(const Corpus& corpus, const SplitLists& lists) {
  std::unordered_set<std::string_view> known;
  known.reserve(corpus.dialogues.size());
  for (const auto& d : corpus.dialogues) known.insert(d.id);

  Partition p;
  for (const auto& d : corpus.dialogues) p.assignments[d.id] = Split::Train;

  std::set<std::string_view> dev_ids;
  for (const auto& id : lists.dev) {
    if (!known.contains(id)) {
      throw ParseError("dev list id '" + id + "' absent from corpus");
    }
    dev_ids.insert(id);
    p.assignments[id] = Split::Dev;
  }
  for (const auto& id : lists.test) {
    if (dev_ids.contains(id)) {
      throw ParseError("id '" + id + "' appears in both dev and test lists");
    }
    if (!known.contains(id)) {
      throw ParseError("test list id '" + id + "' absent from corpus");
    }
    p.assignments[id] = Split::Test;
  }

  // Observed fractions stand in for the ratios; seed and threshold do not
  // apply to an upstream partition.
  const auto sizes = p.sizes();
  const double n = static_cast<double>(corpus.dialogues.size());
  const double dev = static_cast<double>(sizes[1]) / n;
  const double test = static_cast<double>(sizes[2]) / n;
  p.metadata.ratios =
      SplitRatios::make(std::max(0.0, 1.0 - dev - test), dev, test);
  p.metadata.method = std::string(kUpstreamMethod);
  p.metadata.tool_version = tool_version();
  return p;
}

}  // namespace emostrat
