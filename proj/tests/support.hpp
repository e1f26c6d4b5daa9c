// Shared test helpers: a minimal JSON-schema checker covering the subset the
// shipped schemas use (type, required, properties, items, enum, oneOf), and
// small numeric comparison utilities.

#pragma once

#include <cmath>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace testsupport {

using nlohmann::json;

inline bool approx_rel(double a, double b, double tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline bool type_matches(const std::string& type, const json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "integer")
    return value.is_number_integer() || value.is_number_unsigned();
  if (type == "number") return value.is_number();
  return false;
}

// Returns an empty string when `value` conforms, else a short reason.
inline std::string schema_error(const json& schema, const json& value) {
  if (schema.contains("oneOf")) {
    std::string last;
    for (const json& alt : schema["oneOf"]) {
      last = schema_error(alt, value);
      if (last.empty()) return "";
    }
    return "no oneOf alternative matched (last: " + last + ")";
  }
  if (schema.contains("enum")) {
    for (const json& e : schema["enum"])
      if (e == value) return "";
    return "value " + value.dump() + " not in enum";
  }
  if (schema.contains("type")) {
    const std::string type = schema["type"].get<std::string>();
    if (!type_matches(type, value))
      return "expected " + type + ", got " + value.dump().substr(0, 40);
    if (type == "object") {
      if (schema.contains("required"))
        for (const json& key : schema["required"])
          if (!value.contains(key.get<std::string>()))
            return "missing required field " + key.get<std::string>();
      if (schema.contains("properties")) {
        for (auto it = schema["properties"].begin();
             it != schema["properties"].end(); ++it) {
          if (!value.contains(it.key())) continue;
          const std::string sub = schema_error(it.value(), value[it.key()]);
          if (!sub.empty()) return it.key() + ": " + sub;
        }
      }
    }
    if (type == "array" && schema.contains("items")) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string sub = schema_error(schema["items"], value[i]);
        if (!sub.empty()) return "item " + std::to_string(i) + ": " + sub;
      }
    }
  }
  return "";
}

inline bool validates(const json& schema, const json& value) {
  return schema_error(schema, value).empty();
}

}  // namespace testsupport
