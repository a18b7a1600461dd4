#include "emostrat/report.hpp"

#include <cstdio>
#include <sstream>

namespace emostrat {

using nlohmann::json;

namespace {

json pct(double v) { return round_half_up(v, 2); }
json pct(const std::optional<double>& v) {
  return v ? pct(*v) : json(nullptr);
}
json div6(const std::optional<double>& v) {
  return v ? json(round_half_up(*v, 6)) : json(nullptr);
}

json by_class(const ClassValues& v) {
  json j = json::object();
  for (auto e : kAllEmotions) j[std::string(name(e))] = pct(v[index(e)]);
  return j;
}

json by_class(const OptionalClassValues& v) {
  json j = json::object();
  for (auto e : kAllEmotions) j[std::string(name(e))] = pct(v[index(e)]);
  return j;
}

json pairs_json(const std::array<std::optional<double>, 3>& values) {
  json j = json::object();
  for (std::size_t k = 0; k < kSplitPairs.size(); ++k) {
    j[split_pair_name(kSplitPairs[k])] = div6(values[k]);
  }
  return j;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", round_half_up(v, 2));
  return buf;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", round_half_up(v, 6));
  return buf;
}

std::string fmt2(const std::optional<double>& v) {
  return v ? fmt2(*v) : std::string("-");
}

std::string split_label(Split s) {
  switch (s) {
    case Split::Train:
      return "Train";
    case Split::Dev:
      return "Dev";
    case Split::Test:
      return "Test";
  }
  return "?";
}

void class_header(std::ostream& out, const std::string& first,
                  const std::string& extra = {}) {
  out << "| " << first << " |";
  for (auto e : kAllEmotions) out << ' ' << short_name(e) << " |";
  out << extra << "\n|---|";
  for (std::size_t i = 0; i < kNumEmotions; ++i) out << "---:|";
  for (char c : extra) {
    if (c == '|') out << "---:|";
  }
  out << '\n';
}

void f1_table(std::ostream& out, const PerSplit<F1Report>& reports) {
  class_header(out, "Data", " w/o N. | w N. |");
  for (auto s : kAllSplits) {
    const auto r = reports[index(s)].rounded();
    out << "| " << split_label(s) << " |";
    for (auto v : r.per_class) out << ' ' << fmt2(v) << " |";
    out << ' ' << fmt2(r.macro_without_neutral) << " | "
        << fmt2(r.macro_with_neutral) << " |\n";
  }
}

void divergence_table(std::ostream& out,
                      const std::array<std::optional<double>, 3>& values) {
  out << "| Pair | JS divergence (bits) |\n|---|---:|\n";
  for (std::size_t k = 0; k < kSplitPairs.size(); ++k) {
    out << "| " << split_pair_name(kSplitPairs[k]) << " | "
        << (values[k] ? fmt6(*values[k]) : std::string("-")) << " |\n";
  }
}

}  // namespace

json to_json(const F1Report& report) {
  const auto r = report.rounded();
  json zero = json::array();
  for (auto e : kAllEmotions) {
    if (r.zero_denominator[index(e)]) zero.push_back(std::string(name(e)));
  }
  json matrix = json::array();
  for (auto gold : kAllEmotions) {
    json row = json::array();
    for (auto pred : kAllEmotions) row.push_back(r.matrix.at(gold, pred));
    matrix.push_back(std::move(row));
  }
  return {{"per_class", by_class(r.per_class)},
          {"macro_f1_without_neutral", r.macro_without_neutral},
          {"macro_f1_with_neutral", r.macro_with_neutral},
          {"zero_denominator_classes", std::move(zero)},
          {"confusion_matrix", std::move(matrix)},
          {"scored_pairs", r.matrix.total()}};
}

json to_json(const ShiftReport& report) {
  json j = json::object();

  json splits = json::object();
  for (auto s : kAllSplits) {
    splits[std::string(split_name(s))] = {
        {"dialogues", report.counts.dialogues[index(s)]},
        {"user_utterances", report.counts.user_utterances[index(s)]}};
  }
  j["splits"] = std::move(splits);

  json rf = json::object();
  for (auto s : kAllSplits) {
    const auto& v = report.relative_frequency[index(s)];
    rf[std::string(split_name(s))] = v ? by_class(*v) : json(nullptr);
  }
  j["relative_frequency"] = std::move(rf);
  j["relative_frequency_max_gap"] = by_class(report.gaps);
  j["js_divergence"] = pairs_json(report.divergence);

  if (report.manual_resolution) {
    json mr = json::object();
    for (auto s : kAllSplits) {
      mr[std::string(split_name(s))] =
          by_class((*report.manual_resolution)[index(s)]);
    }
    j["manual_resolution"] = std::move(mr);
  } else {
    j["manual_resolution"] = {{"unavailable", "annotation provenance unavailable"}};
  }

  if (report.agreement) {
    j["agreement"] = {{"complete", pct(report.agreement->complete)},
                      {"partial", pct(report.agreement->partial)},
                      {"none", pct(report.agreement->none)},
                      {"utterances", report.agreement->utterances}};
  } else {
    j["agreement"] = {{"unavailable", "annotation provenance unavailable"}};
  }

  if (report.annotator_f1) {
    json f1 = {{"pooling", std::string(pooling_name(report.pooling))}};
    for (auto s : kAllSplits) {
      f1[std::string(split_name(s))] = to_json((*report.annotator_f1)[index(s)]);
    }
    j["annotator_f1"] = std::move(f1);
  } else {
    j["annotator_f1"] = {{"unavailable", "annotation provenance unavailable"}};
  }
  j["notices"] = report.notices;
  return j;
}

json to_json(const EvaluationReport& report) {
  json j = json::object();
  for (auto s : kAllSplits) {
    j[std::string(split_name(s))] = to_json(report.per_split[index(s)]);
  }
  const auto& dev = report.per_split[index(Split::Dev)].rounded();
  const auto& test = report.per_split[index(Split::Test)].rounded();
  // Differences of the emitted (rounded) macros, as a reader would compute.
  j["dev_minus_test"] = {
      {"macro_f1_without_neutral",
       round_half_up(dev.macro_without_neutral - test.macro_without_neutral, 2)},
      {"macro_f1_with_neutral",
       round_half_up(dev.macro_with_neutral - test.macro_with_neutral, 2)}};
  return j;
}

json to_json(const PartitionComparison& c) {
  json classes = json::object();
  for (auto e : kAllEmotions) {
    const auto i = index(e);
    classes[std::string(name(e))] = {
        {"original_gap", pct(c.original_gap[i])},
        {"proposed_gap", pct(c.proposed_gap[i])},
        {"delta", pct(c.proposed_gap[i] - c.original_gap[i])},
        {"change", std::string(change_name(c.change[i]))}};
  }
  json j = {{"classes", std::move(classes)},
            {"js_divergence",
             {{"original", pairs_json(c.original_divergence)},
              {"proposed", pairs_json(c.proposed_divergence)},
              {"original_mean", round_half_up(c.original_mean_divergence, 6)},
              {"proposed_mean", round_half_up(c.proposed_mean_divergence, 6)},
              {"delta_mean", round_half_up(c.proposed_mean_divergence -
                                               c.original_mean_divergence,
                                           6)}}},
            {"classes_not_worse", c.classes_not_worse()},
            {"improved", c.improved()}};
  auto spread = [](const std::optional<F1Spread>& s) -> json {
    if (!s) return nullptr;
    return {{"train_test_gap_without_neutral",
             pct(s->train_test_gap_without_neutral)},
            {"max_spread_without_neutral", pct(s->max_spread_without_neutral)},
            {"max_spread_with_neutral", pct(s->max_spread_with_neutral)}};
  };
  if (c.original_f1) {
    j["annotator_f1_spread"] = {{"original", spread(c.original_f1)},
                                {"proposed", spread(c.proposed_f1)}};
  } else {
    j["annotator_f1_spread"] = {
        {"unavailable", "annotation provenance unavailable"}};
  }
  return j;
}

std::string to_markdown(const ShiftReport& report) {
  std::ostringstream out;
  out << "## Split sizes\n\n| Split | Dialogues | User utterances |\n"
         "|---|---:|---:|\n";
  for (auto s : kAllSplits) {
    out << "| " << split_label(s) << " | " << report.counts.dialogues[index(s)]
        << " | " << report.counts.user_utterances[index(s)] << " |\n";
  }

  out << "\n## Relative frequency (%)\n\n";
  class_header(out, "Split");
  for (auto s : kAllSplits) {
    out << "| " << split_label(s) << " |";
    const auto& v = report.relative_frequency[index(s)];
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      out << ' ' << (v ? fmt2((*v)[i]) : std::string("-")) << " |";
    }
    out << '\n';
  }
  out << "| Max gap |";
  for (auto g : report.gaps) out << ' ' << fmt2(g) << " |";
  out << '\n';

  out << "\n## Manual resolution (%)\n\n";
  if (report.manual_resolution) {
    class_header(out, "Split");
    for (auto s : kAllSplits) {
      out << "| " << split_label(s) << " |";
      for (const auto& v : (*report.manual_resolution)[index(s)]) {
        out << ' ' << fmt2(v) << " |";
      }
      out << '\n';
    }
  } else {
    out << "_Unavailable: annotation provenance unavailable._\n";
  }

  out << "\n## Distribution shift\n\n";
  divergence_table(out, report.divergence);

  out << "\n## Annotator agreement (%)\n\n";
  if (report.agreement) {
    out << "| Complete | Partial | None |\n|---:|---:|---:|\n| "
        << fmt2(report.agreement->complete) << " | "
        << fmt2(report.agreement->partial) << " | "
        << fmt2(report.agreement->none) << " |\n";
  } else {
    out << "_Unavailable: annotation provenance unavailable._\n";
  }

  out << "\n## Annotator F1 (" << pooling_name(report.pooling) << ")\n\n";
  if (report.annotator_f1) {
    f1_table(out, *report.annotator_f1);
  } else {
    out << "_Unavailable: annotation provenance unavailable._\n";
  }

  if (!report.notices.empty()) {
    out << "\n## Notices\n\n";
    for (const auto& n : report.notices) out << "- " << n << '\n';
  }
  return out.str();
}

std::string to_markdown(const EvaluationReport& report) {
  std::ostringstream out;
  out << "## Prediction F1\n\n";
  f1_table(out, report.per_split);
  const auto j = to_json(report);
  out << "\nDev - Test macro F1: w/o N. "
      << fmt2(j["dev_minus_test"]["macro_f1_without_neutral"].get<double>())
      << ", w N. "
      << fmt2(j["dev_minus_test"]["macro_f1_with_neutral"].get<double>())
      << '\n';
  return out.str();
}

std::string to_markdown(const PartitionComparison& c) {
  std::ostringstream out;
  out << "## Max cross-split relative-frequency gap (percentage points)\n\n";
  class_header(out, "Partition");
  out << "| Original |";
  for (auto g : c.original_gap) out << ' ' << fmt2(g) << " |";
  out << "\n| Proposed |";
  for (auto g : c.proposed_gap) out << ' ' << fmt2(g) << " |";
  out << "\n| Change |";
  for (auto ch : c.change) out << ' ' << change_name(ch) << " |";
  out << "\n\n## JS divergence (bits)\n\n| Pair | Original | Proposed |\n"
         "|---|---:|---:|\n";
  for (std::size_t k = 0; k < kSplitPairs.size(); ++k) {
    auto show = [](const std::optional<double>& v) {
      return v ? fmt6(*v) : std::string("-");
    };
    out << "| " << split_pair_name(kSplitPairs[k]) << " | "
        << show(c.original_divergence[k]) << " | "
        << show(c.proposed_divergence[k]) << " |\n";
  }
  out << "| mean | " << fmt6(c.original_mean_divergence) << " | "
      << fmt6(c.proposed_mean_divergence) << " |\n";

  out << "\n## Annotator macro F1 spread\n\n";
  if (c.original_f1) {
    out << "| Partition | Train-Test gap w/o N. | Max spread w/o N. | "
           "Max spread w N. |\n|---|---:|---:|---:|\n";
    auto row = [&](const char* label, const F1Spread& s) {
      out << "| " << label << " | " << fmt2(s.train_test_gap_without_neutral)
          << " | " << fmt2(s.max_spread_without_neutral) << " | "
          << fmt2(s.max_spread_with_neutral) << " |\n";
    };
    row("Original", *c.original_f1);
    row("Proposed", *c.proposed_f1);
  } else {
    out << "_Unavailable: annotation provenance unavailable._\n";
  }

  out << "\nClasses not worse: " << c.classes_not_worse() << " of "
      << kNumEmotions << ". Improved: " << (c.improved() ? "yes" : "no")
      << '\n';
  return out.str();
}

}  // namespace emostrat
