#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emostrat {

enum class Split : std::uint8_t { Train = 0, Dev = 1, Test = 2 };

inline constexpr std::array<Split, 3> kAllSplits = {Split::Train, Split::Dev,
                                                    Split::Test};

constexpr std::size_t index(Split s) noexcept {
  return static_cast<std::size_t>(s);
}

// "train" / "dev" / "test", as used in partition files.
std::string_view split_name(Split s) noexcept;
Split split_from_name(std::string_view name);

// Train/dev/test fractions. Each ratio is also held as an exact count of
// 1e-9 units so that quota arithmetic is integer-only and reproducible.
class SplitRatios {
 public:
  static constexpr std::int64_t kUnitsPerOne = 1'000'000'000;

  // 0.8 / 0.1 / 0.1
  SplitRatios();

  // Throws std::invalid_argument unless each ratio is in [0,1] and the sum
  // is 1 within 1e-9.
  static SplitRatios make(double train, double dev, double test);

  // Parses "a,b,c".
  static SplitRatios parse(std::string_view text);

  double train() const noexcept { return values_[0]; }
  double dev() const noexcept { return values_[1]; }
  double test() const noexcept { return values_[2]; }
  double operator[](Split s) const noexcept { return values_[index(s)]; }
  std::int64_t units(Split s) const noexcept { return units_[index(s)]; }

  const std::array<double, 3>& values() const noexcept { return values_; }

  bool operator==(const SplitRatios& other) const noexcept {
    return values_ == other.values_;
  }

 private:
  SplitRatios(std::array<double, 3> values, std::array<std::int64_t, 3> units)
      : values_(values), units_(units) {}

  std::array<double, 3> values_;
  std::array<std::int64_t, 3> units_;
};

struct PartitionMetadata {
  std::optional<std::uint64_t> seed;
  SplitRatios ratios;
  std::optional<std::int64_t> threshold;
  std::string method;
  std::string tool_version;

  bool operator==(const PartitionMetadata&) const = default;
};

inline constexpr std::string_view kStratifiedMethod = "stratified-v1";
inline constexpr std::string_view kUpstreamMethod = "upstream-lists";

// Assignment of dialogue ids to splits. A partition produced for a corpus
// covers it exactly once; intermediate (partial) partitions cover a subset.
struct Partition {
  std::map<std::string, Split, std::less<>> assignments;
  PartitionMetadata metadata;

  std::array<std::size_t, 3> sizes() const;
  std::optional<Split> find(std::string_view dialogue_id) const;
  std::vector<std::string> ids_in(Split s) const;

  bool operator==(const Partition&) const = default;
};

std::string tool_version();

}  // namespace emostrat
