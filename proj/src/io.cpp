#include "emostrat/io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "emostrat/error.hpp"

namespace emostrat {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("error reading " + path.string());
  return std::move(ss).str();
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error("error writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() +
                ": " + ec.message());
  }
}

std::vector<std::string> parse_id_list(std::string_view contents) {
  std::vector<std::string> ids;
  while (!contents.empty()) {
    auto nl = contents.find('\n');
    auto line = contents.substr(0, nl);
    const auto first = line.find_first_not_of(" \t\r");
    line = first == std::string_view::npos
               ? std::string_view{}
               : line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (!line.empty()) ids.emplace_back(line);
    if (nl == std::string_view::npos) break;
    contents.remove_prefix(nl + 1);
  }
  return ids;
}

std::string format_id_list(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    out += id;
    out += '\n';
  }
  return out;
}

}  // namespace emostrat
