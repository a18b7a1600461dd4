#include "emostrat/canonical_format.hpp"

#include "json_util.hpp"

namespace emostrat {

using detail::child_path;
using detail::json;

namespace {

Emotion parse_label(const json& j, const std::string& path) {
  const auto value = detail::require_int(j, path);
  try {
    return emotion_from_code(value);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()) + " at " + path);
  }
}

EmotionAnnotation parse_annotation(const json& j, const std::string& path) {
  static constexpr std::string_view kKeys[] = {"final", "annotations",
                                               "manually_resolved"};
  detail::require_object(j, path);
  detail::reject_unknown_keys(j, path, kKeys);

  EmotionAnnotation a;
  const auto final_path = child_path(path, "final");
  a.final_label =
      parse_label(detail::require_member(j, "final", path), final_path);

  if (auto it = j.find("annotations"); it != j.end()) {
    const auto ann_path = child_path(path, "annotations");
    detail::require_array(*it, ann_path);
    if (it->size() != 3) detail::schema_error(ann_path, "exactly 3 labels");
    std::array<Emotion, 3> labels{};
    for (std::size_t i = 0; i < 3; ++i) {
      labels[i] = parse_label((*it)[i], child_path(ann_path, i));
    }
    a.annotator_labels = labels;
  }
  if (auto it = j.find("manually_resolved"); it != j.end()) {
    a.manually_resolved =
        detail::require_bool(*it, child_path(path, "manually_resolved"));
  }
  return a;
}

UtteranceRecord parse_turn(const json& j, const std::string& dialogue_id,
                           const std::string& path) {
  static constexpr std::string_view kKeys[] = {"index", "speaker", "text",
                                               "emotion"};
  detail::require_object(j, path);
  detail::reject_unknown_keys(j, path, kKeys);

  UtteranceRecord turn;
  turn.dialogue_id = dialogue_id;

  const auto index_path = child_path(path, "index");
  const auto idx =
      detail::require_int(detail::require_member(j, "index", path), index_path);
  if (idx < 0) detail::schema_error(index_path, "non-negative integer");
  turn.turn_index = static_cast<std::uint64_t>(idx);

  const auto speaker_path = child_path(path, "speaker");
  const auto speaker = detail::require_string(
      detail::require_member(j, "speaker", path), speaker_path);
  if (speaker == "user") {
    turn.speaker = Speaker::User;
  } else if (speaker == "system") {
    turn.speaker = Speaker::System;
  } else {
    detail::schema_error(speaker_path, "\"user\" or \"system\"");
  }

  if (auto it = j.find("text"); it != j.end()) {
    turn.text = detail::require_string(*it, child_path(path, "text"));
  }
  if (auto it = j.find("emotion"); it != j.end()) {
    turn.emotion = parse_annotation(*it, child_path(path, "emotion"));
  }
  return turn;
}

json annotation_to_json(const EmotionAnnotation& a) {
  json j = json::object();
  j["final"] = code(a.final_label);
  if (a.annotator_labels) {
    json labels = json::array();
    for (auto e : *a.annotator_labels) labels.push_back(code(e));
    j["annotations"] = std::move(labels);
  }
  if (a.manually_resolved) j["manually_resolved"] = *a.manually_resolved;
  return j;
}

}  // namespace

Corpus parse_canonical(std::string_view document) {
  static constexpr std::string_view kTopKeys[] = {"source", "dialogues"};
  static constexpr std::string_view kDialogueKeys[] = {"dialogue_id", "turns"};

  const json root = detail::parse_json(document, "corpus document");
  const std::string root_path;
  detail::require_object(root, root_path);
  detail::reject_unknown_keys(root, root_path, kTopKeys);

  Corpus corpus;
  corpus.source_label = detail::require_string(
      detail::require_member(root, "source", root_path), "/source");

  const auto& dialogues = detail::require_array(
      detail::require_member(root, "dialogues", root_path), "/dialogues");
  corpus.dialogues.reserve(dialogues.size());
  for (std::size_t i = 0; i < dialogues.size(); ++i) {
    const auto path = child_path("/dialogues", i);
    const auto& dj = detail::require_object(dialogues[i], path);
    detail::reject_unknown_keys(dj, path, kDialogueKeys);

    Dialogue dialogue;
    dialogue.id = detail::require_string(
        detail::require_member(dj, "dialogue_id", path),
        child_path(path, "dialogue_id"));
    const auto turns_path = child_path(path, "turns");
    const auto& turns = detail::require_array(
        detail::require_member(dj, "turns", path), turns_path);
    dialogue.turns.reserve(turns.size());
    for (std::size_t t = 0; t < turns.size(); ++t) {
      dialogue.turns.push_back(
          parse_turn(turns[t], dialogue.id, child_path(turns_path, t)));
    }
    corpus.dialogues.push_back(std::move(dialogue));
  }

  require_valid(corpus);
  return corpus;
}

std::string serialize_canonical(const Corpus& corpus) {
  json dialogues = json::array();
  for (const auto& d : corpus.dialogues) {
    json turns = json::array();
    for (const auto& t : d.turns) {
      json tj = json::object();
      tj["index"] = t.turn_index;
      tj["speaker"] = t.speaker == Speaker::User ? "user" : "system";
      if (t.text) tj["text"] = *t.text;
      if (t.emotion) tj["emotion"] = annotation_to_json(*t.emotion);
      turns.push_back(std::move(tj));
    }
    dialogues.push_back(json{{"dialogue_id", d.id}, {"turns", std::move(turns)}});
  }
  json root = {{"source", corpus.source_label},
               {"dialogues", std::move(dialogues)}};
  return root.dump() + "\n";
}

}  // namespace emostrat
