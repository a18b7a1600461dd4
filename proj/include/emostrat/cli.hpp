#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include "emostrat/diagnostics.hpp"
#include "emostrat/partition.hpp"
#include "emostrat/strata.hpp"
#include "json.hpp"

namespace emostrat::cli {

enum class Command { Split, Diagnose, Compare, Eval, Convert };
enum class Format { Json, Csv, Markdown };

std::string_view command_name(Command c) noexcept;
std::string_view format_name(Format f) noexcept;

struct RunConfig {
  Command command = Command::Split;
  std::filesystem::path input;
  std::filesystem::path partition;
  std::filesystem::path partition_b;
  std::filesystem::path predictions;
  std::filesystem::path dev_list;
  std::filesystem::path test_list;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 42;
  SplitRatios ratios;
  std::int64_t threshold = kDefaultThreshold;
  std::set<Format> formats = {Format::Json, Format::Csv, Format::Markdown};
  Pooling pooling = Pooling::Pooled;
  bool assert_improved = false;
};

// Echoed into every JSON and markdown file a command writes.
nlohmann::json config_json(const RunConfig& config);

// Each command returns the process exit status: 0 on success, 1 on input
// or structural errors, 3 when --assert-improved fails. Progress goes to
// `out`, diagnostics to `err`.
int cmd_split(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_diagnose(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_convert(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNotImproved = 3;

// Parses argv into a RunConfig. Returns nullopt after printing help or a
// usage error; `exit_code` then holds the status to return.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv,
                                            std::ostream& out,
                                            std::ostream& err, int& exit_code);

int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace emostrat::cli
