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

#include "beht/behavioral_type.hpp"

#include <unordered_set>

#include "beht/error.hpp"
#include "beht/pipeline.hpp"

namespace beht {

void BehavioralType::validate() const {
  if (id.empty()) fail(ErrorKind::Structural, "behavioral type has an empty id");
  std::unordered_set<std::string> names;
  for (const auto& a : automata) {
    if (a.name.empty()) fail(ErrorKind::Structural, "type '" + id + "': unnamed automaton");
    if (!names.insert(a.name).second)
      fail(ErrorKind::Structural, "type '" + id + "': duplicate name '" + a.name + "'");
    for (const auto& loc : a.param_locations)
      if (!a.automaton.find(loc))
        fail(ErrorKind::Structural, "type '" + id + "', automaton '" + a.name +
                                        "': parameterized location '" + loc + "' is not declared");
  }
  for (const auto& r : regexes) {
    if (r.name.empty()) fail(ErrorKind::Structural, "type '" + id + "': unnamed regex");
    if (!names.insert(r.name).second)
      fail(ErrorKind::Structural, "type '" + id + "': duplicate name '" + r.name + "'");
    r.expr.validate();
  }
  std::unordered_set<std::string> methods;
  for (const auto& l : labels()) methods.insert(l.name);
  for (const auto& [method, limit] : maxtimes) {
    if (limit <= 0)
      fail(ErrorKind::Structural, "type '" + id + "': maximal execution time of '" + method +
                                      "' must be positive");
    if (!methods.contains(method))
      fail(ErrorKind::Structural, "type '" + id + "': maximal execution time given for '" +
                                      method + "', which no automaton or regex mentions");
  }
}

const NamedAutomaton* BehavioralType::find_automaton(std::string_view name) const {
  for (const auto& a : automata)
    if (a.name == name) return &a;
  return nullptr;
}

const NamedRegex* BehavioralType::find_regex(std::string_view name) const {
  for (const auto& r : regexes)
    if (r.name == name) return &r;
  return nullptr;
}

Automaton BehavioralType::resolve(std::string_view name) const {
  if (name.empty()) {
    if (!automata.empty()) return automata.front().automaton;
    if (!regexes.empty()) return regex_to_automaton(regexes.front().expr);
    fail(ErrorKind::Contract, "type '" + id + "' has neither automata nor regexes");
  }
  if (const auto* a = find_automaton(name)) return a->automaton;
  if (const auto* r = find_regex(name)) return regex_to_automaton(r->expr);
  fail(ErrorKind::Contract, "type '" + id + "' has no automaton or regex named '" +
                                std::string(name) + "'");
}

LabelSet BehavioralType::labels() const {
  LabelSet out;
  for (const auto& a : automata) out.insert(a.automaton.alphabet().begin(), a.automaton.alphabet().end());
  for (const auto& r : regexes) {
    auto atoms = r.expr.atoms();
    out.insert(atoms.begin(), atoms.end());
  }
  return out;
}

}  // namespace beht
