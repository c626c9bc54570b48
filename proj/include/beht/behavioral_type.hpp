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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "beht/automaton.hpp"
#include "beht/regex.hpp"

namespace beht {

/// Method name -> maximal execution time in milliseconds. A missing key
/// means no limit.
using MaxTimeTable = std::map<std::string, std::int64_t>;

struct NamedAutomaton {
  std::string name;
  Automaton automaton;
  /// Locations carrying a parameter (parameterized specifications only).
  std::set<LocationId> param_locations;

  bool operator==(const NamedAutomaton&) const = default;
};

struct NamedRegex {
  std::string name;
  Regex expr;

  bool operator==(const NamedRegex&) const = default;
};

struct BehavioralType {
  std::string id;
  std::vector<NamedAutomaton> automata;
  std::vector<NamedRegex> regexes;
  MaxTimeTable maxtimes;
  std::map<std::string, std::string> meta;

  bool operator==(const BehavioralType&) const = default;

  /// Unique names, positive limits, every limited method used by some
  /// automaton or regex, param locations declared. Throws Error(Structural).
  void validate() const;

  const NamedAutomaton* find_automaton(std::string_view name) const;
  const NamedRegex* find_regex(std::string_view name) const;

  /// The named automaton, or the named regex converted to one. An empty
  /// name selects the first automaton, else the first regex.
  Automaton resolve(std::string_view name = {}) const;

  /// Union of automaton and regex alphabets.
  LabelSet labels() const;
};

}  // namespace beht
