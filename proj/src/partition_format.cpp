#include "emostrat/partition_format.hpp"

#include "emostrat/io.hpp"
#include "json_util.hpp"

namespace emostrat {

using detail::child_path;
using detail::json;

std::string serialize_partition(const Partition& partition) {
  const auto& m = partition.metadata;
  json meta = json::object();
  meta["method"] = m.method;
  meta["ratios"] = m.ratios.values();
  meta["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  meta["threshold"] = m.threshold ? json(*m.threshold) : json(nullptr);
  meta["tool_version"] = m.tool_version;

  json assignments = json::object();
  for (const auto& [id, split] : partition.assignments) {
    assignments[id] = split_name(split);
  }
  json root = json::object();
  root["assignments"] = std::move(assignments);
  root["metadata"] = std::move(meta);
  return root.dump(2) + "\n";
}

Partition parse_partition(std::string_view document) {
  static constexpr std::string_view kTopKeys[] = {"metadata", "assignments"};
  static constexpr std::string_view kMetaKeys[] = {
      "seed", "ratios", "threshold", "method", "tool_version"};

  const json root = detail::parse_json(document, "partition document");
  detail::require_object(root, "");
  detail::reject_unknown_keys(root, "", kTopKeys);

  Partition p;
  const auto& meta = detail::require_object(
      detail::require_member(root, "metadata", ""), "/metadata");
  detail::reject_unknown_keys(meta, "/metadata", kMetaKeys);

  const auto& seed = detail::require_member(meta, "seed", "/metadata");
  if (!seed.is_null()) {
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
      detail::schema_error("/metadata/seed", "unsigned 64-bit integer or null");
    }
    if (seed.is_number_integer() && !seed.is_number_unsigned()) {
      detail::schema_error("/metadata/seed", "non-negative integer");
    }
    p.metadata.seed = seed.get<std::uint64_t>();
  }
  const auto& threshold =
      detail::require_member(meta, "threshold", "/metadata");
  if (!threshold.is_null()) {
    p.metadata.threshold =
        detail::require_int(threshold, "/metadata/threshold");
  }
  const auto& ratios = detail::require_array(
      detail::require_member(meta, "ratios", "/metadata"), "/metadata/ratios");
  if (ratios.size() != 3) {
    detail::schema_error("/metadata/ratios", "three numbers");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (!ratios[i].is_number()) {
      detail::schema_error(child_path("/metadata/ratios", i), "number");
    }
  }
  try {
    p.metadata.ratios = SplitRatios::make(
        ratios[0].get<double>(), ratios[1].get<double>(), ratios[2].get<double>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid /metadata/ratios: ") + e.what());
  }
  p.metadata.method = detail::require_string(
      detail::require_member(meta, "method", "/metadata"), "/metadata/method");
  p.metadata.tool_version = detail::require_string(
      detail::require_member(meta, "tool_version", "/metadata"),
      "/metadata/tool_version");

  const auto& assignments = detail::require_object(
      detail::require_member(root, "assignments", ""), "/assignments");
  for (auto it = assignments.begin(); it != assignments.end(); ++it) {
    const auto path = child_path("/assignments", it.key());
    const auto name = detail::require_string(*it, path);
    try {
      p.assignments.emplace(it.key(), split_from_name(name));
    } catch (const ParseError&) {
      detail::schema_error(path, "\"train\", \"dev\" or \"test\"");
    }
  }
  return p;
}

void write_list_files(const Partition& partition,
                      const std::filesystem::path& dir) {
  write_file_atomic(dir / "trainListFile.txt",
                    format_id_list(partition.ids_in(Split::Train)));
  write_file_atomic(dir / "valListFile.txt",
                    format_id_list(partition.ids_in(Split::Dev)));
  write_file_atomic(dir / "testListFile.txt",
                    format_id_list(partition.ids_in(Split::Test)));
}

}  // namespace emostrat
