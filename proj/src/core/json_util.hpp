/*
 * Copyright (c) 2026, The behtypes Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#pragma once

#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "beht/error.hpp"
#include "json.hpp"

namespace beht::detail {

inline std::string pointer_or_root(const std::string& at) { return at.empty() ? "/" : at; }

inline nlohmann::json parse_json(std::string_view text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::Parse, what + ": line " + std::to_string(line) + ", column " +
                               std::to_string(col) + ": malformed JSON");
  }
}

inline void expect_object(const nlohmann::json& j, const std::string& at) {
  if (!j.is_object()) fail(ErrorKind::Parse, pointer_or_root(at) + ": expected an object");
}

inline const nlohmann::json& get_member(const nlohmann::json& j, const char* key,
                                        const std::string& at) {
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorKind::Parse, pointer_or_root(at) + ": missing member '" + key + "'");
  return *it;
}

inline std::string get_string(const nlohmann::json& j, const char* key, const std::string& at) {
  const auto& v = get_member(j, key, at);
  if (!v.is_string()) fail(ErrorKind::Parse, at + "/" + key + ": expected a string");
  return v.get<std::string>();
}

inline const nlohmann::json& get_array(const nlohmann::json& j, const char* key,
                                       const std::string& at) {
  const auto& v = get_member(j, key, at);
  if (!v.is_array()) fail(ErrorKind::Parse, at + "/" + key + ": expected an array");
  return v;
}

inline std::vector<std::string> get_strings(const nlohmann::json& j, const char* key,
                                            const std::string& at) {
  std::vector<std::string> out;
  const auto& arr = get_array(j, key, at);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string())
      fail(ErrorKind::Parse, at + "/" + key + "/" + std::to_string(i) + ": expected a string");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

/// Unknown-member policy: errors when strict, warnings otherwise.
struct Members {
  bool strict = true;
  std::vector<std::string>* warnings = nullptr;

  void check(const nlohmann::json& j, const std::string& at,
             std::initializer_list<std::string_view> known) const {
    if (!j.is_object()) return;
    for (const auto& item : j.items()) {
      bool found = false;
      for (auto k : known) found = found || k == item.key();
      if (found) continue;
      const auto msg = at + "/" + item.key() + ": unknown member '" + item.key() + "'";
      if (strict) fail(ErrorKind::Parse, msg);
      if (warnings) warnings->push_back(msg);
    }
  }
};

}  // namespace beht::detail
