#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "emostrat/canonical_format.hpp"
#include "emostrat/cli.hpp"
#include "emostrat/io.hpp"
#include "emostrat/partition_format.hpp"
#include "json.hpp"
#include "support/synthetic.hpp"
#include "support/temp_dir.hpp"

namespace emostrat {
namespace {

using nlohmann::json;
using testing::make_corpus;
using testing::make_dialogue;
using testing::TempDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "emostrat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// 100 dialogues with pairwise distinct sequences.
Corpus unique_corpus() {
  std::vector<Dialogue> ds;
  for (std::size_t i = 0; i < 100; ++i) {
    std::vector<testing::UserTurn> turns = {{static_cast<int>(i % 7)},
                                            {static_cast<int>(i / 7 % 7)},
                                            {static_cast<int>(i / 49)}};
    ds.push_back(make_dialogue(testing::padded_id("dlg", i, 3), turns));
  }
  return make_corpus(ds);
}

std::string write_corpus(const TempDir& dir, const Corpus& corpus,
                         const std::string& name = "corpus.json") {
  const auto path = dir / name;
  write_file_atomic(path, serialize_canonical(corpus));
  return path.string();
}

TEST(CliSplit, HundredDialogueFixture) {
  TempDir dir;
  const auto input = write_corpus(dir, unique_corpus());
  const auto out = (dir / "out").string();
  const auto r = run_cli({"split", "--input", input, "--out-dir", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("split 100 dialogues: train 80, dev 10, test 10"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("strata: 0 (0 dialogues stratified), pooled: 100"),
            std::string::npos);

  const auto p = parse_partition(read_file(dir / "out/partition.json"));
  EXPECT_EQ(p.sizes(), (std::array<std::size_t, 3>{80, 10, 10}));
  EXPECT_EQ(p.metadata.seed, std::optional<std::uint64_t>(42));
  EXPECT_EQ(p.metadata.threshold, std::optional<std::int64_t>(6));
  EXPECT_EQ(parse_id_list(read_file(dir / "out/valListFile.txt")),
            p.ids_in(Split::Dev));
  EXPECT_EQ(parse_id_list(read_file(dir / "out/trainListFile.txt")).size(), 80u);
  EXPECT_EQ(parse_id_list(read_file(dir / "out/testListFile.txt")).size(), 10u);

  const auto summary = json::parse(read_file(dir / "out/split_summary.json"));
  EXPECT_EQ(summary["config"]["seed"], 42);
  EXPECT_EQ(summary["config"]["threshold"], 6);
  EXPECT_EQ(summary["report"]["sizes"]["train"], 80);
}

TEST(CliSplit, ByteIdenticalAcrossRuns) {
  TempDir dir;
  testing::SyntheticOptions opt;
  opt.dialogues = 500;
  const auto input = write_corpus(dir, testing::synthetic_corpus(opt));
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(run_cli({"split", "--input", input, "--out-dir",
                       (dir / sub).string(), "--seed", "7"})
                  .code,
              0);
  }
  EXPECT_EQ(read_file(dir / "a/partition.json"), read_file(dir / "b/partition.json"));
  EXPECT_EQ(read_file(dir / "a/trainListFile.txt"),
            read_file(dir / "b/trainListFile.txt"));

  ASSERT_EQ(run_cli({"split", "--input", input, "--out-dir",
                     (dir / "c").string(), "--seed", "8"})
                .code,
            0);
  EXPECT_NE(read_file(dir / "a/partition.json"), read_file(dir / "c/partition.json"));
}

TEST(CliSplit, ThresholdZeroPoolsNothing) {
  TempDir dir;
  const auto input = write_corpus(dir, unique_corpus());
  const auto r = run_cli({"split", "--input", input, "--out-dir",
                          dir.path().string(), "--threshold", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("strata: 100 (100 dialogues stratified), pooled: 0 dialogues"),
            std::string::npos)
      << r.out;
  // Every stratum has one dialogue, and a lone dialogue always goes to train.
  const auto p = parse_partition(read_file(dir / "partition.json"));
  EXPECT_EQ(p.sizes(), (std::array<std::size_t, 3>{100, 0, 0}));
}

TEST(CliSplit, CustomRatiosAndFormats) {
  TempDir dir;
  const auto input = write_corpus(dir, unique_corpus());
  const auto r = run_cli({"split", "--input", input, "--out-dir",
                          dir.path().string(), "--ratios", "0.6,0.2,0.2",
                          "--format", "md"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto p = parse_partition(read_file(dir / "partition.json"));
  EXPECT_EQ(p.sizes(), (std::array<std::size_t, 3>{60, 20, 20}));
  EXPECT_FALSE(std::filesystem::exists(dir / "split_summary.json"));
}

TEST(CliSplit, BadInputsFail) {
  TempDir dir;
  write_file_atomic(dir / "bad.json", "{\"dialogues\": [{\"id\": 3}]}");
  auto r = run_cli({"split", "--input", (dir / "bad.json").string(), "--out-dir",
                    dir.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(dir / "partition.json"));

  r = run_cli({"split", "--input", (dir / "missing.json").string()});
  EXPECT_EQ(r.code, 1);
}

TEST(CliDiagnose, WithoutAnnotatorsReportsUnavailable) {
  TempDir dir;
  const auto corpus = make_corpus({make_dialogue("a", {0, 0, 1}),
                                   make_dialogue("b", {0, 6}),
                                   make_dialogue("c", {1, 0, 0, 0})});
  const auto input = write_corpus(dir, corpus);
  Partition p;
  p.assignments = {{"a", Split::Train}, {"b", Split::Dev}, {"c", Split::Test}};
  p.metadata.method = "fixture";
  write_file_atomic(dir / "p.json", serialize_partition(p));

  const auto r = run_cli({"diagnose", "--input", input, "--partition",
                          (dir / "p.json").string(), "--out-dir",
                          dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("notice: annotator F1 unavailable"), std::string::npos);

  const auto doc = json::parse(read_file(dir / "diagnose.json"));
  const auto& rep = doc["report"];
  EXPECT_EQ(rep["annotator_f1"]["unavailable"], "annotation provenance unavailable");
  EXPECT_EQ(rep["agreement"]["unavailable"], "annotation provenance unavailable");
  EXPECT_EQ(rep["manual_resolution"]["unavailable"],
            "annotation provenance unavailable");
  // Hand tally: train 2/3 Neutral, 1/3 Fearful; dev 1/2, 1/2; test 3/4, 1/4.
  EXPECT_EQ(rep["relative_frequency"]["train"]["Neutral"], 66.67);
  EXPECT_EQ(rep["relative_frequency"]["train"]["Fearful"], 33.33);
  EXPECT_EQ(rep["relative_frequency"]["dev"]["Satisfied"], 50.0);
  EXPECT_EQ(rep["relative_frequency"]["test"]["Fearful"], 25.0);
  EXPECT_EQ(rep["relative_frequency_max_gap"]["Fearful"], 33.33);
  EXPECT_EQ(rep["splits"]["test"]["user_utterances"], 4);
  EXPECT_EQ(doc["config"]["command"], "diagnose");

  const auto md = read_file(dir / "diagnose.md");
  EXPECT_NE(md.find("<!-- config: "), std::string::npos);
  EXPECT_NE(md.find("unavailable"), std::string::npos);
  EXPECT_EQ(read_file(dir / "sequence_frequencies.csv"),
            "sequence,count\n0-0-1,1\n0-6,1\n1-0-0-0,1\n");
}

TEST(CliDiagnose, PartitionMissingDialogueFails) {
  TempDir dir;
  const auto input =
      write_corpus(dir, make_corpus({make_dialogue("a", {0}), make_dialogue("b", {0})}));
  Partition p;
  p.assignments = {{"a", Split::Train}};
  p.metadata.method = "fixture";
  write_file_atomic(dir / "p.json", serialize_partition(p));
  const auto r = run_cli({"diagnose", "--input", input, "--partition",
                          (dir / "p.json").string(), "--out-dir",
                          dir.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("'b'"), std::string::npos) << r.err;
}

TEST(CliCompare, IdenticalPartitionsWithAssertFail) {
  TempDir dir;
  testing::SyntheticOptions opt;
  opt.dialogues = 200;
  const auto input = write_corpus(dir, testing::synthetic_corpus(opt));
  ASSERT_EQ(run_cli({"split", "--input", input, "--out-dir", dir.path().string()}).code,
            0);
  const auto part = (dir / "partition.json").string();

  auto r = run_cli({"compare", "--input", input, "--partition", part,
                    "--partition-b", part, "--out-dir", dir.path().string()});
  EXPECT_EQ(r.code, 0) << r.err;
  auto doc = json::parse(read_file(dir / "compare.json"));
  EXPECT_FALSE(doc["report"].contains("error"));

  r = run_cli({"compare", "--input", input, "--partition", part, "--partition-b",
               part, "--out-dir", dir.path().string(), "--assert-improved"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("does not improve"), std::string::npos);
  doc = json::parse(read_file(dir / "compare.json"));
  EXPECT_TRUE(doc["report"].contains("error"));
  EXPECT_NE(read_file(dir / "compare.md").find("## Error"), std::string::npos);
}

TEST(CliEval, PerfectPredictions) {
  TempDir dir;
  const auto corpus = unique_corpus();
  const auto input = write_corpus(dir, corpus);
  ASSERT_EQ(run_cli({"split", "--input", input, "--out-dir", dir.path().string()}).code,
            0);
  std::string lines;
  for (const auto& d : corpus.dialogues) {
    for (const auto& t : d.turns) {
      if (t.speaker != Speaker::User) continue;
      lines += json{{"dialogue_id", d.id},
                    {"index", t.turn_index},
                    {"label", code(t.emotion->final_label)}}
                   .dump() +
               "\n";
    }
  }
  write_file_atomic(dir / "pred.jsonl", lines);
  const auto r = run_cli({"eval", "--input", input, "--partition",
                          (dir / "partition.json").string(), "--predictions",
                          (dir / "pred.jsonl").string(), "--out-dir",
                          dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(read_file(dir / "eval.json"));
  // Classes absent from a split score 0 and are flagged; the rest are 100.
  for (const char* split : {"train", "dev", "test"}) {
    const auto& rep = doc["report"][split];
    const auto& flagged = rep["zero_denominator_classes"];
    for (const auto& [cls, v] : rep["per_class"].items()) {
      const bool absent =
          std::find(flagged.begin(), flagged.end(), cls) != flagged.end();
      EXPECT_EQ(v.get<double>(), absent ? 0.0 : 100.0) << split << " " << cls;
    }
  }
  EXPECT_TRUE(doc["report"]["dev_minus_test"].contains("macro_f1_without_neutral"));
  EXPECT_TRUE(std::filesystem::exists(dir / "eval.md"));

  write_file_atomic(dir / "pred.jsonl", lines.substr(lines.find('\n') + 1));
  EXPECT_EQ(run_cli({"eval", "--input", input, "--partition",
                     (dir / "partition.json").string(), "--predictions",
                     (dir / "pred.jsonl").string(), "--out-dir",
                     dir.path().string()})
                .code,
            1);
}

constexpr const char* kEmowozSnippet = R"({
  "MUL0001.json": {"log": [
    {"text": "I need a hotel.", "emotion": 0},
    {"text": "Which area?", "emotion": -1},
    {"text": "Thanks!", "emotion": 6},
    {"text": "Welcome.", "emotion": -1}]},
  "SNG0002.json": {"log": [
    {"text": "Help!", "emotion": 1},
    {"text": "On it.", "emotion": -1}]},
  "SNG0003.json": {"log": [
    {"text": "Cheers", "emotion": 6},
    {"text": "Bye", "emotion": -1}]}
})";

TEST(CliConvert, SnippetRoundTrips) {
  TempDir dir;
  write_file_atomic(dir / "emowoz.json", kEmowozSnippet);
  write_file_atomic(dir / "val.txt", "SNG0002.json\n");
  write_file_atomic(dir / "test.txt", "SNG0003.json\n");
  const auto r = run_cli({"convert", "--input", (dir / "emowoz.json").string(),
                          "--dev-list", (dir / "val.txt").string(), "--test-list",
                          (dir / "test.txt").string(), "--out-dir",
                          (dir / "conv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("converted 3 dialogues, 4 user utterances"), std::string::npos);
  const auto corpus = parse_canonical(read_file(dir / "conv/corpus.json"));
  EXPECT_EQ(corpus.user_turn_count(), 4u);
  EXPECT_EQ(corpus.source_label, "emowoz.json");
  const auto p = parse_partition(read_file(dir / "conv/original_partition.json"));
  EXPECT_EQ(p.find("SNG0002.json"), Split::Dev);
  EXPECT_EQ(p.find("MUL0001.json"), Split::Train);
  EXPECT_EQ(p.metadata.method, kUpstreamMethod);
}

TEST(CliConvert, CorruptedFieldNameNamesPath) {
  TempDir dir;
  std::string doc = kEmowozSnippet;
  doc.replace(doc.find("\"log\""), 5, "\"lgo\"");
  write_file_atomic(dir / "emowoz.json", doc);
  const auto r = run_cli({"convert", "--input", (dir / "emowoz.json").string(),
                          "--out-dir", dir.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("/MUL0001.json"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(dir / "corpus.json"));
}

TEST(CommandLine, ParsesFlags) {
  std::ostringstream out, err;
  int code = -1;
  const char* argv[] = {"emostrat", "split", "--input", "c.json", "--seed",
                        "18446744073709551615", "--ratios", "0.7,0.2,0.1",
                        "--threshold", "3", "--format", "json,md"};
  const auto c = cli::parse_command_line(12, argv, out, err, code);
  ASSERT_TRUE(c) << err.str();
  EXPECT_EQ(code, 0);
  EXPECT_EQ(c->command, cli::Command::Split);
  EXPECT_EQ(c->seed, 18446744073709551615ULL);
  EXPECT_EQ(c->ratios, SplitRatios::make(0.7, 0.2, 0.1));
  EXPECT_EQ(c->threshold, 3);
  EXPECT_EQ(c->formats, (std::set<cli::Format>{cli::Format::Json, cli::Format::Markdown}));

  const char* argv2[] = {"emostrat", "compare", "--input", "c.json", "--partition",
                         "a.json", "--partition-b", "b.json",
                         "--annotator-pooling", "averaged", "--assert-improved"};
  const auto c2 = cli::parse_command_line(11, argv2, out, err, code);
  ASSERT_TRUE(c2) << err.str();
  EXPECT_EQ(c2->command, cli::Command::Compare);
  EXPECT_EQ(c2->pooling, Pooling::Averaged);
  EXPECT_TRUE(c2->assert_improved);
  EXPECT_EQ(c2->seed, 42u);
  EXPECT_EQ(c2->formats.size(), 3u);
}

TEST(CommandLine, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"split"}).code, 2);
  EXPECT_EQ(run_cli({"split", "--input", "x", "--ratios", "0.5,0.5,0.5"}).code, 2);
  EXPECT_EQ(run_cli({"split", "--input", "x", "--threshold", "-1"}).code, 2);
  EXPECT_EQ(run_cli({"split", "--input", "x", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"diagnose", "--input", "x"}).code, 2);
  EXPECT_EQ(run_cli({"diagnose", "--input", "x", "--partition", "p",
                     "--annotator-pooling", "mean"})
                .code,
            2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  const auto help = run_cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("split"), std::string::npos);
}

}  // namespace
}  // namespace emostrat
