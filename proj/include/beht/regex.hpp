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

#include <string>
#include <string_view>
#include <vector>

#include "beht/label.hpp"

namespace beht {

/// Event regular expression. `.` concatenation, `+` alternative, `*` star;
/// parentheses group and `()` denotes the empty word.
struct Regex {
  enum class Kind { Atom, Concat, Alt, Star, Epsilon };

  Kind kind = Kind::Epsilon;
  Label atom;                   // Kind::Atom only
  std::vector<Regex> children;  // Concat/Alt: >= 2, Star: exactly 1

  static Regex epsilon();
  static Regex of(Label label);
  static Regex concat(std::vector<Regex> parts);
  static Regex alt(std::vector<Regex> parts);
  static Regex star(Regex child);

  bool operator==(const Regex&) const = default;

  /// Throws Error(Structural) naming the first offending node.
  void validate() const;

  LabelSet atoms() const;
};

/// `*` binds tightest, then `.`, then `+`. Throws Error(Parse) with the
/// character offset of the problem.
Regex parse_regex(std::string_view text);

/// Canonical surface form; parse_regex(to_string(r)) == r.
std::string to_string(const Regex& r);

}  // namespace beht
