#pragma once

#include <string>
#include <string_view>

#include "emostrat/corpus.hpp"

namespace emostrat {

// Canonical corpus document:
//
//   {"source": "...",
//    "dialogues": [
//      {"dialogue_id": "...",
//       "turns": [
//         {"index": 0, "speaker": "user", "text": "...",
//          "emotion": {"final": 6, "annotations": [6, 6, 0],
//                      "manually_resolved": false}},
//         {"index": 1, "speaker": "system", "text": "..."}]}]}
//
// "text", "annotations" and "manually_resolved" are optional; "emotion"
// appears on user turns only. The returned corpus has passed validate().
Corpus parse_canonical(std::string_view document);

// Inverse of parse_canonical for validated corpora. Output is compact JSON
// with sorted object keys, so equal corpora serialize to equal bytes.
std::string serialize_canonical(const Corpus& corpus);

}  // namespace emostrat
