#include "emostrat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "emostrat/error.hpp"
#include "json_util.hpp"

namespace emostrat {

namespace {

double percent(std::size_t part, std::size_t whole) {
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

// Calls fn(split, annotation) for every user turn of the corpus.
template <typename Fn>
void for_each_user_turn(const Corpus& corpus, const Partition& partition,
                        Fn&& fn) {
  for (const auto& d : corpus.dialogues) {
    const auto split = partition.find(d.id);
    if (!split) {
      throw PartitionError("partition has no assignment for dialogue '" +
                           d.id + "'");
    }
    for (const auto& t : d.turns) {
      if (t.speaker == Speaker::User && t.emotion) fn(*split, t, *t.emotion);
    }
  }
}

using ClassCounts = std::array<std::size_t, kNumEmotions>;

PerSplit<ClassCounts> class_counts(const Corpus& corpus,
                                   const Partition& partition) {
  PerSplit<ClassCounts> counts{};
  for_each_user_turn(corpus, partition,
                     [&](Split s, const UtteranceRecord&,
                         const EmotionAnnotation& a) {
                       ++counts[index(s)][index(a.final_label)];
                     });
  return counts;
}

std::size_t sum(const ClassCounts& c) {
  std::size_t n = 0;
  for (auto v : c) n += v;
  return n;
}

ClassValues to_values(const ClassCounts& c) {
  ClassValues v{};
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    v[i] = static_cast<double>(c[i]);
  }
  return v;
}

void require_annotators(const Corpus& corpus) {
  if (!has_annotator_labels(corpus)) {
    throw ProvenanceUnavailable("per-annotator labels missing on some user turn");
  }
}

}  // namespace

void require_coverage(const Corpus& corpus, const Partition& partition) {
  for (const auto& d : corpus.dialogues) {
    if (!partition.find(d.id)) {
      throw PartitionError("partition has no assignment for dialogue '" +
                           d.id + "'");
    }
  }
  if (partition.assignments.size() != corpus.dialogues.size()) {
    std::set<std::string_view> ids;
    for (const auto& d : corpus.dialogues) ids.insert(d.id);
    for (const auto& [id, split] : partition.assignments) {
      if (!ids.contains(id)) {
        throw PartitionError("partition assigns dialogue '" + id +
                             "' which is not in the corpus");
      }
    }
  }
}

SplitCounts split_counts(const Corpus& corpus, const Partition& partition) {
  require_coverage(corpus, partition);
  SplitCounts out;
  for (const auto& d : corpus.dialogues) {
    const auto s = index(*partition.find(d.id));
    ++out.dialogues[s];
    out.user_utterances[s] += d.user_turn_count();
  }
  return out;
}

PerSplit<std::optional<ClassValues>> relative_frequency(
    const Corpus& corpus, const Partition& partition) {
  require_coverage(corpus, partition);
  const auto counts = class_counts(corpus, partition);
  PerSplit<std::optional<ClassValues>> out;
  for (auto s : kAllSplits) {
    const auto& c = counts[index(s)];
    const auto total = sum(c);
    if (total == 0) continue;
    ClassValues v{};
    for (std::size_t i = 0; i < kNumEmotions; ++i) v[i] = percent(c[i], total);
    out[index(s)] = v;
  }
  return out;
}

PerSplit<OptionalClassValues> manual_resolution_rate(
    const Corpus& corpus, const Partition& partition) {
  require_coverage(corpus, partition);
  if (!has_resolution_flags(corpus)) {
    throw ProvenanceUnavailable("manually_resolved flag missing on some user turn");
  }
  PerSplit<ClassCounts> resolved{};
  const auto totals = class_counts(corpus, partition);
  for_each_user_turn(corpus, partition,
                     [&](Split s, const UtteranceRecord&,
                         const EmotionAnnotation& a) {
                       if (*a.manually_resolved) {
                         ++resolved[index(s)][index(a.final_label)];
                       }
                     });
  PerSplit<OptionalClassValues> out{};
  for (auto s : kAllSplits) {
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      const auto total = totals[index(s)][i];
      if (total > 0) out[index(s)][i] = percent(resolved[index(s)][i], total);
    }
  }
  return out;
}

AgreementStats agreement_stats(const Corpus& corpus) {
  require_annotators(corpus);
  std::size_t complete = 0, partial = 0, none = 0;
  for (const auto& d : corpus.dialogues) {
    for (const auto& t : d.turns) {
      if (t.speaker != Speaker::User) continue;
      const auto& [a, b, c] = *t.emotion->annotator_labels;
      if (a == b && b == c) {
        ++complete;
      } else if (a == b || b == c || a == c) {
        ++partial;
      } else {
        ++none;
      }
    }
  }
  AgreementStats out;
  out.utterances = complete + partial + none;
  if (out.utterances > 0) {
    out.complete = percent(complete, out.utterances);
    out.partial = percent(partial, out.utterances);
    out.none = percent(none, out.utterances);
  }
  return out;
}

// --- confusion matrix / F1 -------------------------------------------------

void ConfusionMatrix::add(Emotion gold, Emotion predicted, std::size_t n) {
  counts_[index(gold)][index(predicted)] += n;
}

std::size_t ConfusionMatrix::at(Emotion gold, Emotion predicted) const {
  return counts_[index(gold)][index(predicted)];
}

std::size_t ConfusionMatrix::total() const {
  std::size_t n = 0;
  for (const auto& row : counts_) {
    for (auto v : row) n += v;
  }
  return n;
}

std::size_t ConfusionMatrix::gold_count(Emotion e) const {
  std::size_t n = 0;
  for (auto v : counts_[index(e)]) n += v;
  return n;
}

std::size_t ConfusionMatrix::predicted_count(Emotion e) const {
  std::size_t n = 0;
  for (const auto& row : counts_) n += row[index(e)];
  return n;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    for (std::size_t j = 0; j < kNumEmotions; ++j) {
      counts_[i][j] += other.counts_[i][j];
    }
  }
  return *this;
}

double macro_without_neutral(const ClassValues& per_class) {
  double s = 0.0;
  for (std::size_t i = 1; i < kNumEmotions; ++i) s += per_class[i];
  return s / static_cast<double>(kNumEmotions - 1);
}

double macro_with_neutral(const ClassValues& per_class) {
  double s = 0.0;
  for (std::size_t i = 0; i < kNumEmotions; ++i) s += per_class[i];
  return s / static_cast<double>(kNumEmotions);
}

F1Report F1Report::from_matrix(const ConfusionMatrix& matrix) {
  ClassValues f1{};
  std::array<bool, kNumEmotions> flags{};
  for (auto e : kAllEmotions) {
    const auto tp = static_cast<double>(matrix.at(e, e));
    const auto predicted = static_cast<double>(matrix.predicted_count(e));
    const auto gold = static_cast<double>(matrix.gold_count(e));
    const double precision = predicted > 0 ? tp / predicted : 0.0;
    const double recall = gold > 0 ? tp / gold : 0.0;
    if (precision + recall > 0) {
      f1[index(e)] = 100.0 * 2.0 * precision * recall / (precision + recall);
    } else {
      flags[index(e)] = true;
    }
  }
  return from_per_class(f1, flags, matrix);
}

F1Report F1Report::from_per_class(const ClassValues& per_class,
                                  const std::array<bool, kNumEmotions>& flags,
                                  const ConfusionMatrix& matrix) {
  F1Report r;
  r.per_class = per_class;
  r.zero_denominator = flags;
  r.macro_without_neutral = emostrat::macro_without_neutral(per_class);
  r.macro_with_neutral = emostrat::macro_with_neutral(per_class);
  r.matrix = matrix;
  return r;
}

F1Report F1Report::rounded() const {
  F1Report r = *this;
  for (auto& v : r.per_class) v = round_half_up(v, 2);
  r.macro_without_neutral =
      round_half_up(emostrat::macro_without_neutral(r.per_class), 2);
  r.macro_with_neutral =
      round_half_up(emostrat::macro_with_neutral(r.per_class), 2);
  r.decimals = 2;
  return r;
}

bool F1Report::macros_consistent() const {
  double without = emostrat::macro_without_neutral(per_class);
  double with = emostrat::macro_with_neutral(per_class);
  if (decimals >= 0) {
    without = round_half_up(without, decimals);
    with = round_half_up(with, decimals);
  }
  return without == macro_without_neutral && with == macro_with_neutral;
}

std::string_view pooling_name(Pooling p) noexcept {
  return p == Pooling::Pooled ? "pooled" : "averaged";
}

Pooling pooling_from_name(std::string_view name) {
  if (name == "pooled") return Pooling::Pooled;
  if (name == "averaged") return Pooling::Averaged;
  throw std::invalid_argument("unknown annotator pooling '" +
                              std::string(name) + "'");
}

PerSplit<F1Report> annotator_f1(const Corpus& corpus,
                                const Partition& partition, Pooling pooling) {
  require_coverage(corpus, partition);
  require_annotators(corpus);

  PerSplit<std::array<ConfusionMatrix, 3>> per_annotator{};
  for_each_user_turn(corpus, partition,
                     [&](Split s, const UtteranceRecord&,
                         const EmotionAnnotation& a) {
                       for (std::size_t k = 0; k < 3; ++k) {
                         per_annotator[index(s)][k].add(
                             a.final_label, (*a.annotator_labels)[k]);
                       }
                     });

  PerSplit<F1Report> out;
  for (auto s : kAllSplits) {
    const auto& mats = per_annotator[index(s)];
    ConfusionMatrix pooled;
    for (const auto& m : mats) pooled += m;
    if (pooling == Pooling::Pooled) {
      out[index(s)] = F1Report::from_matrix(pooled);
      continue;
    }
    ClassValues mean{};
    std::array<bool, kNumEmotions> flags{};
    for (const auto& m : mats) {
      const auto r = F1Report::from_matrix(m);
      for (std::size_t i = 0; i < kNumEmotions; ++i) {
        mean[i] += r.per_class[i];
        flags[i] = flags[i] || r.zero_denominator[i];
      }
    }
    for (auto& v : mean) v /= 3.0;
    out[index(s)] = F1Report::from_per_class(mean, flags, pooled);
  }
  return out;
}

// --- predictions -----------------------------------------------------------

Predictions parse_predictions(std::string_view document) {
  static constexpr std::string_view kKeys[] = {"dialogue_id", "index", "label"};
  Predictions out;
  std::size_t line_no = 0;
  while (!document.empty()) {
    ++line_no;
    const auto nl = document.find('\n');
    auto line = document.substr(0, nl);
    document.remove_prefix(nl == std::string_view::npos ? document.size()
                                                        : nl + 1);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    const auto where = "line " + std::to_string(line_no);
    const auto j = detail::parse_json(line, "prediction " + where);
    detail::require_object(j, where);
    detail::reject_unknown_keys(j, where, kKeys);

    UtteranceKey key;
    key.dialogue_id = detail::require_string(
        detail::require_member(j, "dialogue_id", where), where + " dialogue_id");
    const auto idx = detail::require_int(
        detail::require_member(j, "index", where), where + " index");
    if (idx < 0) detail::schema_error(where + " index", "non-negative integer");
    key.index = static_cast<std::uint64_t>(idx);
    const auto raw = detail::require_int(
        detail::require_member(j, "label", where), where + " label");
    Emotion label;
    try {
      label = emotion_from_code(raw);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " at " + where);
    }
    if (!out.emplace(std::move(key), label).second) {
      throw ParseError("duplicate prediction key at " + where);
    }
  }
  return out;
}

EvaluationReport evaluate_predictions(const Predictions& predictions,
                                      const Corpus& corpus,
                                      const Partition& partition) {
  require_coverage(corpus, partition);
  PerSplit<ConfusionMatrix> mats{};
  std::size_t matched = 0;
  UtteranceKey probe;
  for_each_user_turn(
      corpus, partition,
      [&](Split s, const UtteranceRecord& t, const EmotionAnnotation& a) {
        probe.dialogue_id = t.dialogue_id;
        probe.index = t.turn_index;
        auto it = predictions.find(probe);
        if (it == predictions.end()) {
          throw ParseError("missing prediction for dialogue '" +
                           t.dialogue_id + "' turn " +
                           std::to_string(t.turn_index));
        }
        mats[index(s)].add(a.final_label, it->second);
        ++matched;
      });

  if (matched != predictions.size()) {
    for (const auto& [key, label] : predictions) {
      const auto* d = corpus.find(key.dialogue_id);
      const bool known =
          d != nullptr &&
          std::any_of(d->turns.begin(), d->turns.end(), [&](const auto& t) {
            return t.turn_index == key.index && t.speaker == Speaker::User;
          });
      if (!known) {
        throw ParseError("prediction for dialogue '" + key.dialogue_id +
                         "' turn " + std::to_string(key.index) +
                         " has no matching user utterance");
      }
    }
  }

  EvaluationReport out;
  for (auto s : kAllSplits) {
    out.per_split[index(s)] = F1Report::from_matrix(mats[index(s)]);
  }
  const auto& dev = out.per_split[index(Split::Dev)];
  const auto& test = out.per_split[index(Split::Test)];
  out.dev_minus_test_without_neutral =
      dev.macro_without_neutral - test.macro_without_neutral;
  out.dev_minus_test_with_neutral =
      dev.macro_with_neutral - test.macro_with_neutral;
  return out;
}

// --- divergence ------------------------------------------------------------

std::string split_pair_name(std::pair<Split, Split> pair) {
  return std::string(split_name(pair.first)) + "-" +
         std::string(split_name(pair.second));
}

double js_divergence(const ClassValues& p, const ClassValues& q) {
  double sp = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    sp += p[i];
    sq += q[i];
  }
  if (!(sp > 0.0) || !(sq > 0.0)) {
    throw std::invalid_argument("js_divergence needs non-empty distributions");
  }
  // Each term is symmetric in (p, q), so d(p, q) == d(q, p) exactly.
  double d = 0.0;
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    const double a = p[i] / sp;
    const double b = q[i] / sq;
    const double m = 0.5 * (a + b);
    double term = 0.0;
    if (a > 0.0) term += a * std::log2(a / m);
    if (b > 0.0) term += b * std::log2(b / m);
    d += 0.5 * term;
  }
  return std::clamp(d, 0.0, 1.0);
}

std::array<std::optional<double>, 3> shift_divergence(
    const Corpus& corpus, const Partition& partition) {
  require_coverage(corpus, partition);
  const auto counts = class_counts(corpus, partition);
  std::array<std::optional<double>, 3> out;
  for (std::size_t k = 0; k < kSplitPairs.size(); ++k) {
    const auto& a = counts[index(kSplitPairs[k].first)];
    const auto& b = counts[index(kSplitPairs[k].second)];
    if (sum(a) == 0 || sum(b) == 0) continue;
    out[k] = js_divergence(to_values(a), to_values(b));
  }
  return out;
}

ClassValues max_cross_split_gap(
    const PerSplit<std::optional<ClassValues>>& frequencies) {
  ClassValues gap{};
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& f : frequencies) {
      if (!f) continue;
      lo = std::min(lo, (*f)[i]);
      hi = std::max(hi, (*f)[i]);
    }
    gap[i] = hi >= lo ? hi - lo : 0.0;
  }
  return gap;
}

ShiftReport build_shift_report(const Corpus& corpus,
                               const Partition& partition, Pooling pooling) {
  ShiftReport r;
  r.pooling = pooling;
  r.counts = split_counts(corpus, partition);
  r.relative_frequency = relative_frequency(corpus, partition);
  r.gaps = max_cross_split_gap(r.relative_frequency);
  r.divergence = shift_divergence(corpus, partition);

  if (has_resolution_flags(corpus)) {
    r.manual_resolution = manual_resolution_rate(corpus, partition);
  } else {
    r.notices.push_back(
        "manual resolution unavailable: annotation provenance unavailable "
        "(manually_resolved flag missing)");
  }
  if (has_annotator_labels(corpus)) {
    r.agreement = agreement_stats(corpus);
    r.annotator_f1 = annotator_f1(corpus, partition, pooling);
  } else {
    r.notices.push_back(
        "agreement statistics unavailable: annotation provenance unavailable "
        "(per-annotator labels missing)");
    r.notices.push_back(
        "annotator F1 unavailable: annotation provenance unavailable "
        "(per-annotator labels missing)");
  }
  return r;
}

// --- partition comparison --------------------------------------------------

std::string_view change_name(Change c) noexcept {
  switch (c) {
    case Change::Improved:
      return "improved";
    case Change::Unchanged:
      return "unchanged";
    case Change::Regressed:
      return "regressed";
  }
  return "?";
}

std::size_t PartitionComparison::classes_not_worse() const {
  return static_cast<std::size_t>(
      std::count_if(change.begin(), change.end(),
                    [](Change c) { return c != Change::Regressed; }));
}

bool PartitionComparison::improved() const {
  const bool any_strict =
      proposed_mean_divergence < original_mean_divergence ||
      std::any_of(change.begin(), change.end(),
                  [](Change c) { return c == Change::Improved; });
  return classes_not_worse() >= kNumEmotions - 1 &&
         proposed_mean_divergence <= original_mean_divergence && any_strict;
}

namespace {

double mean_present(const std::array<std::optional<double>, 3>& values) {
  double s = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (v) {
      s += *v;
      ++n;
    }
  }
  return n == 0 ? 0.0 : s / static_cast<double>(n);
}

F1Spread f1_spread(const PerSplit<F1Report>& reports, const SplitCounts& counts) {
  F1Spread out;
  out.train_test_gap_without_neutral =
      std::abs(reports[index(Split::Train)].macro_without_neutral -
               reports[index(Split::Test)].macro_without_neutral);
  double lo_wo = std::numeric_limits<double>::infinity(), hi_wo = -lo_wo;
  double lo_w = lo_wo, hi_w = hi_wo;
  for (auto s : kAllSplits) {
    if (counts.user_utterances[index(s)] == 0) continue;
    const auto& r = reports[index(s)];
    lo_wo = std::min(lo_wo, r.macro_without_neutral);
    hi_wo = std::max(hi_wo, r.macro_without_neutral);
    lo_w = std::min(lo_w, r.macro_with_neutral);
    hi_w = std::max(hi_w, r.macro_with_neutral);
  }
  out.max_spread_without_neutral = hi_wo >= lo_wo ? hi_wo - lo_wo : 0.0;
  out.max_spread_with_neutral = hi_w >= lo_w ? hi_w - lo_w : 0.0;
  return out;
}

}  // namespace

PartitionComparison compare_partitions(const Corpus& corpus,
                                       const Partition& original,
                                       const Partition& proposed,
                                       Pooling pooling) {
  PartitionComparison c;
  c.original_gap = max_cross_split_gap(relative_frequency(corpus, original));
  c.proposed_gap = max_cross_split_gap(relative_frequency(corpus, proposed));
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    if (c.proposed_gap[i] < c.original_gap[i]) {
      c.change[i] = Change::Improved;
    } else if (c.proposed_gap[i] > c.original_gap[i]) {
      c.change[i] = Change::Regressed;
    } else {
      c.change[i] = Change::Unchanged;
    }
  }
  c.original_divergence = shift_divergence(corpus, original);
  c.proposed_divergence = shift_divergence(corpus, proposed);
  c.original_mean_divergence = mean_present(c.original_divergence);
  c.proposed_mean_divergence = mean_present(c.proposed_divergence);
  if (has_annotator_labels(corpus)) {
    c.original_f1 = f1_spread(annotator_f1(corpus, original, pooling),
                              split_counts(corpus, original));
    c.proposed_f1 = f1_spread(annotator_f1(corpus, proposed, pooling),
                              split_counts(corpus, proposed));
  }
  return c;
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double magnitude = std::floor(std::abs(value) * scale + 0.5 + 1e-7);
  const double r = magnitude / scale;
  return value < 0 ? -r : r;
}

}  // namespace emostrat
