#pragma once

// Private helpers shared by the JSON readers.

#include <cstdint>
#include <string>
#include <string_view>

#include "emostrat/error.hpp"
#include "json.hpp"

namespace emostrat::detail {

using nlohmann::json;

inline std::string child_path(const std::string& parent, std::string_view key) {
  return parent + "/" + std::string(key);
}

inline std::string child_path(const std::string& parent, std::size_t i) {
  return parent + "/" + std::to_string(i);
}

template <typename J = json>
J parse_json(std::string_view document, std::string_view what) {
  try {
    return J::parse(document.begin(), document.end());
  } catch (const typename J::parse_error& e) {
    throw ParseError("malformed " + std::string(what) + ": " + e.what());
  }
}

[[noreturn]] inline void schema_error(const std::string& path,
                                      std::string_view expectation) {
  throw ParseError("schema mismatch at " + (path.empty() ? "/" : path) +
                   ": expected " + std::string(expectation));
}

template <typename J>
const J& require_member(const J& obj, std::string_view key,
                                  const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    schema_error(child_path(path, key), "member to be present");
  }
  return *it;
}

template <typename J>
const J& require_object(const J& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "object");
  return j;
}

template <typename J>
const J& require_array(const J& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "array");
  return j;
}

template <typename J>
std::string require_string(const J& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "string");
  return j.template get<std::string>();
}

template <typename J>
std::int64_t require_int(const J& j, const std::string& path) {
  if (j.is_number_unsigned()) {
    auto v = j.template get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(INT64_MAX)) schema_error(path, "int64");
    return static_cast<std::int64_t>(v);
  }
  if (!j.is_number_integer()) schema_error(path, "integer");
  return j.template get<std::int64_t>();
}

template <typename J>
bool require_bool(const J& j, const std::string& path) {
  if (!j.is_boolean()) schema_error(path, "boolean");
  return j.template get<bool>();
}

template <typename J, std::size_t N>
void reject_unknown_keys(const J& obj, const std::string& path,
                         const std::string_view (&allowed)[N]) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) schema_error(child_path(path, it.key()), "no such member");
  }
}

}  // namespace emostrat::detail
