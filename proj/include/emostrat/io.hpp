#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace emostrat {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a truncated file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

// One dialogue id per line, surrounding whitespace trimmed. Blank lines are
// ignored.
std::vector<std::string> parse_id_list(std::string_view contents);
std::string format_id_list(const std::vector<std::string>& ids);

}  // namespace emostrat
