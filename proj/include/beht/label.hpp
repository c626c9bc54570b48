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

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace beht {

/// Direction of a method-call event relative to the component owning the
/// automaton. Declaration order is the canonical sort order.
enum class Direction : unsigned char { Inc, Neutral, Out };

const char* to_string(Direction dir) noexcept;
std::optional<Direction> direction_from_string(std::string_view text);

/// An event label. `param` holds an unbound parameter placeholder
/// (`Lock<F>`); bound parameters are folded into `name` (`LockF1`).
struct Label {
  Direction dir = Direction::Neutral;
  std::string name;
  std::optional<std::string> param;

  auto operator<=>(const Label&) const = default;
  bool operator==(const Label&) const = default;

  /// Direction-free identity used for synchronization between components.
  std::string key() const;
  /// Surface form: `INC:Lock`, `OUT:Lock<F>`, `Lock`.
  std::string str() const;
};

using LabelSet = std::set<Label>;

bool is_valid_name(std::string_view name) noexcept;

/// Builds a label, validating name and parameter; throws Error(Structural).
Label make_label(Direction dir, std::string name,
                 std::optional<std::string> param = std::nullopt);

/// Parses the surface form; whitespace after `INC:`/`OUT:` is tolerated.
/// Throws Error(Parse).
Label parse_label(std::string_view text);

std::string join_labels(const LabelSet& labels, std::string_view sep = ",");

}  // namespace beht
