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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "beht/label.hpp"

namespace beht {

using LocationId = std::string;

struct Edge {
  std::size_t src = 0;
  Label label;
  std::size_t dst = 0;

  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

/// Behavioral type automaton (alphabet, locations, initial, edges).
///
/// Values are immutable once built; the constructor enforces every
/// structural invariant, including the consistency condition that each
/// alphabet label labels at least one edge. Locations are addressed by
/// index; names are kept for serialization and reporting. Every location
/// other than the optional error location is accepting, so trace languages
/// are prefix-closed.
class Automaton {
 public:
  /// Single location `l0`, empty alphabet.
  Automaton();

  Automaton(std::vector<LocationId> locations, std::size_t initial,
            LabelSet alphabet, std::vector<Edge> edges,
            std::optional<std::size_t> error_location = std::nullopt);

  /// Convenience builder over names and label surface syntax. The alphabet
  /// is the set of labels used on edges.
  static Automaton from_names(
      std::vector<LocationId> locations, const LocationId& initial,
      const std::vector<std::tuple<std::string, std::string, std::string>>& edges,
      std::optional<LocationId> error_location = std::nullopt);

  const std::vector<LocationId>& locations() const noexcept { return locations_; }
  std::size_t initial() const noexcept { return initial_; }
  const LabelSet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::optional<std::size_t>& error_location() const noexcept { return error_; }

  std::size_t size() const noexcept { return locations_.size(); }
  const LocationId& name(std::size_t loc) const { return locations_.at(loc); }
  std::optional<std::size_t> find(std::string_view name) const;
  bool is_error(std::size_t loc) const noexcept { return error_ && *error_ == loc; }

  /// Edge indices grouped by source location.
  std::vector<std::vector<std::size_t>> outgoing() const;

  bool is_deterministic() const;
  /// Every location has at least one edge for every label of `over`.
  bool is_total(const LabelSet& over) const;
  bool is_total() const { return is_total(alphabet_); }

  /// Locations reachable from the initial location, in index order.
  std::vector<bool> reachable() const;

  bool operator==(const Automaton&) const = default;

 private:
  void validate() const;

  std::vector<LocationId> locations_;
  std::size_t initial_ = 0;
  LabelSet alphabet_;
  std::vector<Edge> edges_;
  std::optional<std::size_t> error_;
};

}  // namespace beht
