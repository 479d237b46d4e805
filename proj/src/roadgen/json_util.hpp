#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "roadgen/errors.hpp"

namespace roadgen::json_util {

using Json = nlohmann::ordered_json;

// Parses `text`, converting syntax errors into ParseError with a 1-based
// line and column.
inline Json parse(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(what + ": malformed JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(column),
                     line, column);
  }
}

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  throw ValidationError("schema", where + ": " + what);
}

inline const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing key '") + key + "'");
  return *it;
}

inline double number(const Json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where, "expected a number");
  return v.get<double>();
}

inline long long integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) schema_error(where, "expected an integer");
  return v.get<long long>();
}

inline std::string string(const Json& v, const std::string& where) {
  if (!v.is_string()) schema_error(where, "expected a string");
  return v.get<std::string>();
}

inline bool boolean(const Json& v, const std::string& where) {
  if (!v.is_boolean()) schema_error(where, "expected a boolean");
  return v.get<bool>();
}

inline const Json& array(const Json& v, const std::string& where) {
  if (!v.is_array()) schema_error(where, "expected an array");
  return v;
}

}  // namespace roadgen::json_util
