#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emostrat/corpus.hpp"
#include "emostrat/partition.hpp"

namespace emostrat {

using ClassValues = std::array<double, kNumEmotions>;
using OptionalClassValues = std::array<std::optional<double>, kNumEmotions>;

template <typename T>
using PerSplit = std::array<T, 3>;

struct SplitCounts {
  PerSplit<std::size_t> dialogues{};
  PerSplit<std::size_t> user_utterances{};
};

// Throws PartitionError unless the partition covers exactly the corpus's
// dialogue ids.
void require_coverage(const Corpus& corpus, const Partition& partition);

SplitCounts split_counts(const Corpus& corpus, const Partition& partition);

// Percent of a split's user utterances carrying each final label. A split
// without user utterances has no value.
PerSplit<std::optional<ClassValues>> relative_frequency(
    const Corpus& corpus, const Partition& partition);

// Percent of each (split, class) cell's utterances that were manually
// resolved; empty cells have no value. Requires the flag on every user turn.
PerSplit<OptionalClassValues> manual_resolution_rate(
    const Corpus& corpus, const Partition& partition);

struct AgreementStats {
  double complete = 0.0;
  double partial = 0.0;
  double none = 0.0;
  std::size_t utterances = 0;
};

// Whole-corpus agreement among the three annotators.
AgreementStats agreement_stats(const Corpus& corpus);

// Rows are gold labels, columns predictions.
class ConfusionMatrix {
 public:
  void add(Emotion gold, Emotion predicted, std::size_t n = 1);
  std::size_t at(Emotion gold, Emotion predicted) const;
  std::size_t total() const;
  std::size_t gold_count(Emotion e) const;
  std::size_t predicted_count(Emotion e) const;

  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::array<std::array<std::size_t, kNumEmotions>, kNumEmotions> counts_{};
};

// F1 values in percent. Macro values are unweighted means of `per_class`
// (all seven, or the six non-Neutral classes); classes whose precision
// and recall are both zero score 0, are included in the means, and are
// flagged in `zero_denominator`.
struct F1Report {
  ClassValues per_class{};
  std::array<bool, kNumEmotions> zero_denominator{};
  double macro_without_neutral = 0.0;
  double macro_with_neutral = 0.0;
  ConfusionMatrix matrix;
  // Decimal places the values were rounded to, or -1 for raw values.
  int decimals = -1;

  static F1Report from_matrix(const ConfusionMatrix& matrix);
  static F1Report from_per_class(const ClassValues& per_class,
                                 const std::array<bool, kNumEmotions>& flags,
                                 const ConfusionMatrix& matrix);

  // Per-class values rounded half-up to 2 decimals, macros recomputed from
  // the rounded values and rounded again. This is what reports emit.
  F1Report rounded() const;

  // True when both macros equal the means of per_class exactly (after
  // rounding to `decimals` when the report is rounded).
  bool macros_consistent() const;
};

double macro_without_neutral(const ClassValues& per_class);
double macro_with_neutral(const ClassValues& per_class);

enum class Pooling { Pooled, Averaged };

std::string_view pooling_name(Pooling p) noexcept;
Pooling pooling_from_name(std::string_view name);

// Pooled: each utterance contributes three (final, annotator) pairs to one
// matrix. Averaged: one matrix per annotator; per-class F1 values are the
// mean of the three, and `matrix` holds the pooled counts.
PerSplit<F1Report> annotator_f1(const Corpus& corpus,
                                const Partition& partition,
                                Pooling pooling = Pooling::Pooled);

struct UtteranceKey {
  std::string dialogue_id;
  std::uint64_t index = 0;

  auto operator<=>(const UtteranceKey&) const = default;
};

using Predictions = std::map<UtteranceKey, Emotion>;

// JSON Lines, one {"dialogue_id": s, "index": n, "label": n} per line.
// Blank lines are skipped; duplicate keys are an error.
Predictions parse_predictions(std::string_view document);

struct EvaluationReport {
  PerSplit<F1Report> per_split;
  double dev_minus_test_without_neutral = 0.0;
  double dev_minus_test_with_neutral = 0.0;
};

// Scores predictions against final labels. Throws ParseError for missing
// or extra keys.
EvaluationReport evaluate_predictions(const Predictions& predictions,
                                      const Corpus& corpus,
                                      const Partition& partition);

// Split pairs in report order: train-dev, train-test, dev-test.
inline constexpr std::array<std::pair<Split, Split>, 3> kSplitPairs = {{
    {Split::Train, Split::Dev},
    {Split::Train, Split::Test},
    {Split::Dev, Split::Test},
}};

std::string split_pair_name(std::pair<Split, Split> pair);

// Jensen-Shannon divergence, base-2, between two count or weight vectors
// (normalized internally). Result is in [0, 1] and symmetric.
double js_divergence(const ClassValues& p, const ClassValues& q);

// One value per kSplitPairs entry; pairs involving an empty split have none.
std::array<std::optional<double>, 3> shift_divergence(
    const Corpus& corpus, const Partition& partition);

// Per class, max minus min relative frequency over non-empty splits.
ClassValues max_cross_split_gap(
    const PerSplit<std::optional<ClassValues>>& frequencies);

struct ShiftReport {
  SplitCounts counts;
  PerSplit<std::optional<ClassValues>> relative_frequency;
  ClassValues gaps{};
  std::optional<PerSplit<OptionalClassValues>> manual_resolution;
  std::array<std::optional<double>, 3> divergence;
  std::optional<AgreementStats> agreement;
  std::optional<PerSplit<F1Report>> annotator_f1;
  Pooling pooling = Pooling::Pooled;
  // Sections skipped for lack of provenance fields, one line each.
  std::vector<std::string> notices;
};

ShiftReport build_shift_report(const Corpus& corpus,
                               const Partition& partition,
                               Pooling pooling = Pooling::Pooled);

enum class Change { Improved, Unchanged, Regressed };

std::string_view change_name(Change c) noexcept;

struct F1Spread {
  double train_test_gap_without_neutral = 0.0;
  double max_spread_without_neutral = 0.0;
  double max_spread_with_neutral = 0.0;
};

struct PartitionComparison {
  ClassValues original_gap{};
  ClassValues proposed_gap{};
  std::array<Change, kNumEmotions> change{};
  std::array<std::optional<double>, 3> original_divergence;
  std::array<std::optional<double>, 3> proposed_divergence;
  double original_mean_divergence = 0.0;
  double proposed_mean_divergence = 0.0;
  std::optional<F1Spread> original_f1;
  std::optional<F1Spread> proposed_f1;

  std::size_t classes_not_worse() const;
  // Gap no worse for at least 6 of 7 classes, mean divergence not
  // increased, and at least one of them strictly better.
  bool improved() const;
};

PartitionComparison compare_partitions(const Corpus& corpus,
                                       const Partition& original,
                                       const Partition& proposed,
                                       Pooling pooling = Pooling::Pooled);

// Half-up rounding to `decimals` places, tolerant of binary representation
// error (51.595 rounds to 51.60).
double round_half_up(double value, int decimals);

}  // namespace emostrat
