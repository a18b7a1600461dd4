#include "emostrat/cli.hpp"

#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "emostrat/canonical_format.hpp"
#include "emostrat/emowoz.hpp"
#include "emostrat/error.hpp"
#include "emostrat/io.hpp"
#include "emostrat/partition_format.hpp"
#include "emostrat/report.hpp"
#include "emostrat/splitter.hpp"

namespace emostrat::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view command_name(Command c) noexcept {
  switch (c) {
    case Command::Split:
      return "split";
    case Command::Diagnose:
      return "diagnose";
    case Command::Compare:
      return "compare";
    case Command::Eval:
      return "eval";
    case Command::Convert:
      return "convert";
  }
  return "?";
}

std::string_view format_name(Format f) noexcept {
  switch (f) {
    case Format::Json:
      return "json";
    case Format::Csv:
      return "csv";
    case Format::Markdown:
      return "md";
  }
  return "?";
}

json config_json(const RunConfig& c) {
  json formats = json::array();
  for (auto f : c.formats) formats.push_back(std::string(format_name(f)));
  auto path = [](const fs::path& p) -> json {
    return p.empty() ? json(nullptr) : json(p.generic_string());
  };
  return {{"command", std::string(command_name(c.command))},
          {"input", path(c.input)},
          {"partition", path(c.partition)},
          {"partition_b", path(c.partition_b)},
          {"predictions", path(c.predictions)},
          {"dev_list", path(c.dev_list)},
          {"test_list", path(c.test_list)},
          {"out_dir", path(c.out_dir)},
          {"seed", c.seed},
          {"ratios", c.ratios.values()},
          {"threshold", c.threshold},
          {"formats", std::move(formats)},
          {"annotator_pooling", std::string(pooling_name(c.pooling))},
          {"assert_improved", c.assert_improved},
          {"tool_version", tool_version()}};
}

namespace {

bool wants(const RunConfig& c, Format f) { return c.formats.contains(f); }

void require_path(const fs::path& p, std::string_view flag) {
  if (p.empty()) throw Error("missing required " + std::string(flag));
}

Corpus load_corpus(const RunConfig& c) {
  require_path(c.input, "--input");
  return parse_canonical(read_file(c.input));
}

Partition load_partition(const fs::path& p, std::string_view flag) {
  require_path(p, flag);
  return parse_partition(read_file(p));
}

std::string with_config_header(const RunConfig& c, std::string_view title,
                               const std::string& body) {
  std::ostringstream out;
  out << "# " << title << "\n\n<!-- config: " << config_json(c).dump()
      << " -->\n\n"
      << body;
  return out.str();
}

void write_json(const RunConfig& c, const std::string& file, json payload) {
  json doc = json::object();
  doc["config"] = config_json(c);
  doc["report"] = std::move(payload);
  write_file_atomic(c.out_dir / file, doc.dump(2) + "\n");
}

template <typename Body>
int guarded(const RunConfig& c, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "emostrat " << command_name(c.command) << ": error: " << e.what()
        << '\n';
    return kExitError;
  }
}

}  // namespace

int cmd_split(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(c, err, [&] {
    const auto corpus = load_corpus(c);
    const auto outcome =
        split_corpus_detailed(corpus, c.ratios, c.threshold, c.seed);
    const auto sizes = outcome.partition.sizes();

    write_file_atomic(c.out_dir / "partition.json",
                      serialize_partition(outcome.partition));
    write_list_files(outcome.partition, c.out_dir);
    if (wants(c, Format::Json)) {
      write_json(c, "split_summary.json",
                 {{"dialogues", corpus.dialogues.size()},
                  {"sizes",
                   {{"train", sizes[0]}, {"dev", sizes[1]}, {"test", sizes[2]}}},
                  {"strata", outcome.strata_count},
                  {"stratified_dialogues", outcome.frequent_dialogues},
                  {"pooled_dialogues", outcome.pooled_dialogues}});
    }

    out << "split " << corpus.dialogues.size() << " dialogues: train "
        << sizes[0] << ", dev " << sizes[1] << ", test " << sizes[2] << '\n'
        << "strata: " << outcome.strata_count << " ("
        << outcome.frequent_dialogues << " dialogues stratified), pooled: "
        << outcome.pooled_dialogues << " dialogues\n";
    return kExitOk;
  });
}

int cmd_diagnose(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(c, err, [&] {
    const auto corpus = load_corpus(c);
    const auto partition = load_partition(c.partition, "--partition");
    const auto report = build_shift_report(corpus, partition, c.pooling);

    if (wants(c, Format::Json)) {
      write_json(c, "diagnose.json", to_json(report));
    }
    if (wants(c, Format::Markdown)) {
      write_file_atomic(c.out_dir / "diagnose.md",
                        with_config_header(c, "Partition diagnostics",
                                           to_markdown(report)));
    }
    if (wants(c, Format::Csv)) {
      write_file_atomic(c.out_dir / "sequence_frequencies.csv",
                        format_frequency_csv(build_frequency_table(corpus)));
    }
    out << "diagnosed " << corpus.dialogues.size() << " dialogues, "
        << corpus.user_turn_count() << " user utterances\n";
    for (const auto& n : report.notices) out << "notice: " << n << '\n';
    return kExitOk;
  });
}

int cmd_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(c, err, [&] {
    const auto corpus = load_corpus(c);
    const auto original = load_partition(c.partition, "--partition");
    const auto proposed = load_partition(c.partition_b, "--partition-b");
    const auto cmp = compare_partitions(corpus, original, proposed, c.pooling);
    const bool failed = c.assert_improved && !cmp.improved();

    json payload = to_json(cmp);
    std::string md = to_markdown(cmp);
    if (failed) {
      const std::string msg =
          "proposed partition does not improve on the original";
      payload["error"] = msg;
      md += "\n## Error\n\n" + msg + "\n";
    }
    if (wants(c, Format::Json)) write_json(c, "compare.json", payload);
    if (wants(c, Format::Markdown)) {
      write_file_atomic(c.out_dir / "compare.md",
                        with_config_header(c, "Partition comparison", md));
    }

    out << "classes not worse: " << cmp.classes_not_worse() << "/"
        << kNumEmotions << ", mean JS " << round_half_up(cmp.original_mean_divergence, 6)
        << " -> " << round_half_up(cmp.proposed_mean_divergence, 6)
        << ", improved: " << (cmp.improved() ? "yes" : "no") << '\n';
    if (failed) {
      err << "emostrat compare: error: proposed partition does not improve "
             "on the original\n";
      return kExitNotImproved;
    }
    return kExitOk;
  });
}

int cmd_eval(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(c, err, [&] {
    const auto corpus = load_corpus(c);
    const auto partition = load_partition(c.partition, "--partition");
    require_path(c.predictions, "--predictions");
    const auto predictions = parse_predictions(read_file(c.predictions));
    const auto report = evaluate_predictions(predictions, corpus, partition);

    if (wants(c, Format::Json)) write_json(c, "eval.json", to_json(report));
    if (wants(c, Format::Markdown)) {
      write_file_atomic(
          c.out_dir / "eval.md",
          with_config_header(c, "Prediction evaluation", to_markdown(report)));
    }
    const auto& dev = report.per_split[index(Split::Dev)].rounded();
    const auto& test = report.per_split[index(Split::Test)].rounded();
    out << "macro F1 w/o Neutral: dev " << dev.macro_without_neutral
        << ", test " << test.macro_without_neutral << '\n';
    return kExitOk;
  });
}

int cmd_convert(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(c, err, [&] {
    require_path(c.input, "--input");
    std::optional<SplitLists> lists;
    if (!c.dev_list.empty() || !c.test_list.empty()) {
      require_path(c.dev_list, "--dev-list");
      require_path(c.test_list, "--test-list");
      lists = SplitLists{parse_id_list(read_file(c.dev_list)),
                         parse_id_list(read_file(c.test_list))};
    }
    auto imported = parse_emowoz(read_file(c.input), lists,
                                 c.input.filename().generic_string());
    const auto canonical = serialize_canonical(imported.corpus);

    // The emitted file must load back cleanly.
    const auto reloaded = parse_canonical(canonical);
    if (reloaded.user_turn_count() != imported.corpus.user_turn_count()) {
      throw Error("converted corpus lost user utterances");
    }

    write_file_atomic(c.out_dir / "corpus.json", canonical);
    if (imported.original_partition) {
      write_file_atomic(c.out_dir / "original_partition.json",
                        serialize_partition(*imported.original_partition));
    }
    out << "converted " << imported.corpus.dialogues.size() << " dialogues, "
        << imported.corpus.user_turn_count() << " user utterances\n";
    return kExitOk;
  });
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  switch (c.command) {
    case Command::Split:
      return cmd_split(c, out, err);
    case Command::Diagnose:
      return cmd_diagnose(c, out, err);
    case Command::Compare:
      return cmd_compare(c, out, err);
    case Command::Eval:
      return cmd_eval(c, out, err);
    case Command::Convert:
      return cmd_convert(c, out, err);
  }
  return kExitUsage;
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv,
                                            std::ostream& out,
                                            std::ostream& err, int& exit_code) {
  CLI::App app{"Emotion-sequence stratified partitioning and dataset-shift "
               "diagnostics for dialogue corpora"};
  app.require_subcommand(1);

  RunConfig config;
  std::string ratios = "0.8,0.1,0.1";
  std::vector<std::string> formats;
  std::string pooling = "pooled";

  auto* split = app.add_subcommand("split", "Partition a canonical corpus");
  auto* diagnose =
      app.add_subcommand("diagnose", "Report dataset shift for a partition");
  auto* compare = app.add_subcommand("compare", "Compare two partitions");
  auto* eval = app.add_subcommand("eval", "Score a prediction file per split");
  auto* convert =
      app.add_subcommand("convert", "Convert an EmoWOZ file to canonical form");

  for (auto* sub : {split, diagnose, compare, eval, convert}) {
    sub->add_option("--input", config.input, "Input corpus")->required();
    sub->add_option("--out-dir", config.out_dir, "Output directory");
    sub->add_option("--format", formats, "Output formats: json, csv, md")
        ->delimiter(',')
        ->check(CLI::IsMember({"json", "csv", "md"}));
  }
  for (auto* sub : {split}) {
    sub->add_option("--seed", config.seed, "PRNG seed");
    sub->add_option("--ratios", ratios, "Train,dev,test fractions");
    sub->add_option("--threshold", config.threshold,
                    "Sequences occurring more often than this are stratified")
        ->check(CLI::NonNegativeNumber);
  }
  for (auto* sub : {diagnose, compare, eval}) {
    sub->add_option("--partition", config.partition, "Partition JSON")
        ->required();
  }
  for (auto* sub : {diagnose, compare}) {
    sub->add_option("--annotator-pooling", pooling,
                    "How annotator F1 combines the three annotators")
        ->check(CLI::IsMember({"pooled", "averaged"}));
  }
  compare->add_option("--partition-b", config.partition_b,
                      "Proposed partition JSON")
      ->required();
  compare->add_flag("--assert-improved", config.assert_improved,
                    "Exit nonzero unless the proposed partition improves");
  eval->add_option("--predictions", config.predictions,
                   "JSON Lines prediction file")
      ->required();
  convert->add_option("--dev-list", config.dev_list,
                      "Upstream dev id list (valListFile.txt)");
  convert->add_option("--test-list", config.test_list,
                      "Upstream test id list (testListFile.txt)");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
    config.ratios = SplitRatios::parse(ratios);
    config.pooling = pooling_from_name(pooling);
  } catch (const CLI::ParseError& e) {
    // --help reports success; every other parse failure is a usage error.
    exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    return std::nullopt;
  } catch (const std::invalid_argument& e) {
    err << "emostrat: " << e.what() << '\n';
    exit_code = kExitUsage;
    return std::nullopt;
  }

  if (!formats.empty()) {
    config.formats.clear();
    for (const auto& f : formats) {
      config.formats.insert(f == "json" ? Format::Json
                            : f == "csv" ? Format::Csv
                                         : Format::Markdown);
    }
  }
  if (split->parsed()) config.command = Command::Split;
  if (diagnose->parsed()) config.command = Command::Diagnose;
  if (compare->parsed()) config.command = Command::Compare;
  if (eval->parsed()) config.command = Command::Eval;
  if (convert->parsed()) config.command = Command::Convert;
  exit_code = kExitOk;
  return config;
}

int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  int code = kExitOk;
  auto config = parse_command_line(argc, argv, out, err, code);
  if (!config) return code;
  return run(*config, out, err);
}

}  // namespace emostrat::cli
