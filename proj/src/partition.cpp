#include "emostrat/partition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "emostrat/error.hpp"

#ifndef EMOSTRAT_VERSION
#define EMOSTRAT_VERSION "0.0.0"
#endif

namespace emostrat {

std::string_view split_name(Split s) noexcept {
  switch (s) {
    case Split::Train:
      return "train";
    case Split::Dev:
      return "dev";
    case Split::Test:
      return "test";
  }
  return "?";
}

Split split_from_name(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "dev") return Split::Dev;
  if (name == "test") return Split::Test;
  throw ParseError("unknown split name '" + std::string(name) + "'");
}

SplitRatios::SplitRatios()
    : values_{0.8, 0.1, 0.1},
      units_{800'000'000, 100'000'000, 100'000'000} {}

SplitRatios SplitRatios::make(double train, double dev, double test) {
  const std::array<double, 3> values = {train, dev, test};
  std::array<std::int64_t, 3> units{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw std::invalid_argument("split ratio " + std::to_string(values[i]) +
                                  " outside [0, 1]");
    }
    units[i] = std::llround(values[i] * static_cast<double>(kUnitsPerOne));
  }
  if (std::abs(train + dev + test - 1.0) > 1e-9) {
    throw std::invalid_argument("split ratios must sum to 1");
  }
  return SplitRatios(values, units);
}

SplitRatios SplitRatios::parse(std::string_view text) {
  std::array<double, 3> v{};
  std::size_t n = 0;
  while (true) {
    auto comma = text.find(',');
    auto field = std::string(text.substr(0, comma));
    if (n == 3) throw std::invalid_argument("expected three ratios a,b,c");
    std::size_t used = 0;
    try {
      v[n] = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != field.size()) {
      throw std::invalid_argument("bad ratio '" + field + "'");
    }
    ++n;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (n != 3) throw std::invalid_argument("expected three ratios a,b,c");
  return make(v[0], v[1], v[2]);
}

std::array<std::size_t, 3> Partition::sizes() const {
  std::array<std::size_t, 3> out{};
  for (const auto& [id, split] : assignments) ++out[index(split)];
  return out;
}

std::optional<Split> Partition::find(std::string_view dialogue_id) const {
  auto it = assignments.find(dialogue_id);
  if (it == assignments.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Partition::ids_in(Split s) const {
  std::vector<std::string> out;
  for (const auto& [id, split] : assignments) {
    if (split == s) out.push_back(id);
  }
  return out;
}

std::string tool_version() { return EMOSTRAT_VERSION; }

}  // namespace emostrat
