#pragma once

// Typed field access for config documents; every failure is a ConfigError
// naming the offending path.

#include <set>
#include <string>

#include <json.hpp>

#include "airnet/error.hpp"

namespace airnet::json_fields {

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + ": missing field '" + key + "'");
  return *it;
}

inline double number(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

inline long long integer(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<long long>();
}

inline bool boolean(const nlohmann::json& v, const std::string& where) {
  if (!v.is_boolean()) throw ConfigError(where + ": expected true or false");
  return v.get<bool>();
}

inline std::string string(const nlohmann::json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

template <typename T, typename Read>
T optional_field(const nlohmann::json& obj, const std::string& key, T fallback, const std::string& where, Read read) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return read(*it, where + "." + key);
}

inline void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (allowed.count(key) == 0) throw ConfigError(where + ": unknown field '" + key + "'");
  }
}

}  // namespace airnet::json_fields
