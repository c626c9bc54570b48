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

#include "beht/label.hpp"

#include <cctype>

#include "beht/error.hpp"

namespace beht {

namespace {

constexpr std::string_view kReserved = ".+*()<>:";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* to_string(Direction dir) noexcept {
  switch (dir) {
    case Direction::Inc: return "INC";
    case Direction::Out: return "OUT";
    case Direction::Neutral: return "NEUTRAL";
  }
  return "NEUTRAL";
}

std::optional<Direction> direction_from_string(std::string_view text) {
  if (text == "INC") return Direction::Inc;
  if (text == "OUT") return Direction::Out;
  if (text == "NEUTRAL") return Direction::Neutral;
  return std::nullopt;
}

std::string Label::key() const {
  if (!param) return name;
  return name + "<" + *param + ">";
}

std::string Label::str() const {
  switch (dir) {
    case Direction::Inc: return "INC:" + key();
    case Direction::Out: return "OUT:" + key();
    case Direction::Neutral: break;
  }
  return key();
}

bool is_valid_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (kReserved.find(c) != std::string_view::npos) return false;
  }
  return true;
}

Label make_label(Direction dir, std::string name, std::optional<std::string> param) {
  if (!is_valid_name(name))
    fail(ErrorKind::Structural, "invalid label name '" + name + "'");
  if (param && !is_valid_name(*param))
    fail(ErrorKind::Structural, "invalid parameter '" + *param + "' on label '" + name + "'");
  return Label{dir, std::move(name), std::move(param)};
}

Label parse_label(std::string_view text) {
  std::string_view s = trim(text);
  Direction dir = Direction::Neutral;
  if (auto colon = s.find(':'); colon != std::string_view::npos) {
    auto prefix = trim(s.substr(0, colon));
    if (prefix == "INC") {
      dir = Direction::Inc;
    } else if (prefix == "OUT") {
      dir = Direction::Out;
    } else if (prefix == "NEUTRAL") {
      dir = Direction::Neutral;
    } else {
      fail(ErrorKind::Parse, "unknown direction '" + std::string(prefix) + "' in label '" +
                                 std::string(text) + "'");
    }
    s = trim(s.substr(colon + 1));
  }
  std::optional<std::string> param;
  if (auto lt = s.find('<'); lt != std::string_view::npos) {
    if (s.back() != '>')
      fail(ErrorKind::Parse, "unterminated parameter in label '" + std::string(text) + "'");
    param = std::string(s.substr(lt + 1, s.size() - lt - 2));
    s = s.substr(0, lt);
  }
  try {
    return make_label(dir, std::string(s), std::move(param));
  } catch (const Error& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

std::string join_labels(const LabelSet& labels, std::string_view sep) {
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += sep;
    out += l.str();
  }
  return out;
}

}  // namespace beht
