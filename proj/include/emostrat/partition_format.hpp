#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "emostrat/partition.hpp"

namespace emostrat {

// {"assignments": {"<id>": "train"|"dev"|"test", ...},
//  "metadata": {"method": ..., "ratios": [f, f, f], "seed": int,
//               "threshold": int, "tool_version": ...}}
// Keys are sorted; the output ends with a newline. seed and threshold are
// null for partitions that were not produced by the splitter.
std::string serialize_partition(const Partition& partition);
Partition parse_partition(std::string_view document);

// trainListFile.txt, valListFile.txt, testListFile.txt in `dir`, sorted,
// one id per line.
void write_list_files(const Partition& partition,
                      const std::filesystem::path& dir);

}  // namespace emostrat
