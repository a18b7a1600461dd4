#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emostrat/corpus.hpp"
#include "emostrat/partition.hpp"

namespace emostrat {

// Upstream dev/test dialogue-id lists (MultiWOZ convention: valListFile.txt,
// testListFile.txt). Dialogues in neither list belong to Train.
struct SplitLists {
  std::vector<std::string> dev;
  std::vector<std::string> test;
};

struct EmowozImport {
  Corpus corpus;
  std::optional<Partition> original_partition;
};

// Adapter for the EmoWOZ release layout. Two top-level shapes are accepted:
//
//   1. Object keyed by dialogue id, each value {"log": [turn, ...], ...}
//      where a turn is {"text": "...", "emotion": E, ...}.
//   2. Array of {"dialogue_id": "...", "log": {"text": [...],
//      "emotion": [E, ...]}} (column-per-field layout).
//
// Turns alternate user/system starting with the user (even positions are
// user turns); turn_index is the position in the log. E is one of:
//
//   * integer: 0..6 is the final label, -1 marks "no emotion";
//   * null, [] or missing: no emotion;
//   * object {"final": L, "1": L, "2": L, "3": L, "manually_resolved": b}
//     where L is an integer or {"emotion": integer}. Annotator keys must be
//     all present or all absent; "manually_resolved" is optional.
//
// A user turn without an emotion, a system turn with one, or any other
// shape raises ParseError naming the JSON path of the offending value.
// Nothing is coerced.
EmowozImport parse_emowoz(std::string_view document,
                          const std::optional<SplitLists>& split_lists = {},
                          std::string source_label = "emowoz");

// Builds the upstream partition from id lists. Throws ParseError for an id
// listed in both lists or absent from the corpus.
Partition partition_from_lists(const Corpus& corpus, const SplitLists& lists);

}  // namespace emostrat
