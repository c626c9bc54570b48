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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beht/automaton.hpp"
#include "beht/regex.hpp"

namespace beht {

/// Minimal deterministic automaton for the prefix closure of L(r).
Automaton regex_to_automaton(const Regex& r);

/// Routes every missing (location, label) pair over `over` to an error
/// location. Total inputs come back unchanged. Throws Error(Contract) when
/// `over` does not cover the alphabet.
Automaton complete(const Automaton& a, const LabelSet& over);
inline Automaton complete(const Automaton& a) { return complete(a, a.alphabet()); }

/// Subset construction restricted to the reachable part. Singleton subsets
/// keep their location name, larger ones are named `{a,b,...}`.
Automaton determinize(const Automaton& a);

/// Partition refinement; requires a deterministic, total input
/// (Error(Precondition) otherwise). Unreachable locations are dropped and
/// each block is named after its first member.
Automaton minimize(const Automaton& a);

/// Renames locations `s0, s1, ...` in breadth-first order from the initial
/// location (smallest labels first), names the error location `err`, and
/// sorts edges. Unreachable locations follow in their original order.
Automaton normalize(const Automaton& a);

/// Removes the error location and every edge entering it.
Automaton strip_error(const Automaton& a);

enum class HideMode { Delete, Tau };

const char* to_string(HideMode mode) noexcept;

/// DELETE drops the edges; TAU turns them into internal steps and removes
/// them by closure. Throws Error(Contract) when `drop` is not a subset of
/// the alphabet.
Automaton hide(const Automaton& a, const LabelSet& drop, HideMode mode);

struct EqualityVerdict {
  bool equal = false;
  /// Pairs each location of the left side with its counterpart on the right.
  std::optional<std::map<LocationId, LocationId>> location_mapping;
  /// Shortest, lexicographically smallest word accepted by exactly one side.
  std::optional<std::vector<Label>> counterexample;
  std::string detail;
};

/// Completes both sides over `universe` (default: union of alphabets),
/// determinizes, minimizes and normalizes, then compares edge for edge.
EqualityVerdict check_equal(const Automaton& a, const Automaton& b,
                            bool compare_location_names = false,
                            const std::optional<LabelSet>& universe = std::nullopt);

/// Trace inclusion L(concrete) ⊆ L(abstract) after hiding every label
/// outside `shared` on both sides. `equal` reads as "refines"; the mapping
/// lists the abstract location paired with each reached concrete location.
EqualityVerdict check_refines(const Automaton& concrete, const Automaton& abstract,
                              const LabelSet& shared, HideMode mode = HideMode::Tau);

/// True iff `word` labels a path from the initial location that never
/// touches the error location.
bool accepts(const Automaton& a, std::span<const Label> word);

/// complete + determinize + minimize + normalize.
Automaton canonicalize(const Automaton& a,
                       const std::optional<LabelSet>& over = std::nullopt);

}  // namespace beht
