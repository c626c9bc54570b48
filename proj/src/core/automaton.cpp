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

#include "beht/automaton.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "beht/error.hpp"

namespace beht {

Automaton::Automaton() : locations_{"l0"} {}

Automaton::Automaton(std::vector<LocationId> locations, std::size_t initial,
                     LabelSet alphabet, std::vector<Edge> edges,
                     std::optional<std::size_t> error_location)
    : locations_(std::move(locations)),
      initial_(initial),
      alphabet_(std::move(alphabet)),
      edges_(std::move(edges)),
      error_(error_location) {
  // Duplicate edges carry no information in a relation.
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  validate();
}

Automaton Automaton::from_names(
    std::vector<LocationId> locations, const LocationId& initial,
    const std::vector<std::tuple<std::string, std::string, std::string>>& edges,
    std::optional<LocationId> error_location) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < locations.size(); ++i) index.emplace(locations[i], i);
  auto lookup = [&](const std::string& n) {
    auto it = index.find(n);
    if (it == index.end()) fail(ErrorKind::Structural, "unknown location '" + n + "'");
    return it->second;
  };
  LabelSet alphabet;
  std::vector<Edge> out;
  for (const auto& [src, label, dst] : edges) {
    Label l = parse_label(label);
    alphabet.insert(l);
    out.push_back(Edge{lookup(src), std::move(l), lookup(dst)});
  }
  std::optional<std::size_t> err;
  if (error_location) err = lookup(*error_location);
  std::size_t init = lookup(initial);
  return Automaton(std::move(locations), init, std::move(alphabet), std::move(out), err);
}

void Automaton::validate() const {
  if (locations_.empty()) fail(ErrorKind::Structural, "automaton has no locations");
  std::unordered_set<std::string> seen;
  for (const auto& n : locations_) {
    if (n.empty()) fail(ErrorKind::Structural, "empty location name");
    if (!seen.insert(n).second) fail(ErrorKind::Structural, "duplicate location '" + n + "'");
  }
  if (initial_ >= locations_.size())
    fail(ErrorKind::Structural, "initial location out of range");
  if (error_ && *error_ >= locations_.size())
    fail(ErrorKind::Structural, "error location out of range");
  LabelSet used;
  for (const auto& e : edges_) {
    if (e.src >= locations_.size() || e.dst >= locations_.size())
      fail(ErrorKind::Structural, "edge endpoint out of range on label '" + e.label.str() + "'");
    if (!alphabet_.contains(e.label))
      fail(ErrorKind::Structural, "edge label '" + e.label.str() + "' is not in the alphabet");
    used.insert(e.label);
  }
  for (const auto& l : alphabet_) {
    if (!used.contains(l))
      fail(ErrorKind::Structural, "consistency: alphabet label '" + l.str() +
                                      "' appears on no edge");
  }
  if (error_) {
    LabelSet loops;
    for (const auto& e : edges_) {
      if (e.src != *error_) continue;
      if (e.dst != *error_)
        fail(ErrorKind::Structural, "error location '" + locations_[*error_] +
                                        "' has an edge to '" + locations_[e.dst] + "'");
      loops.insert(e.label);
    }
    if (loops != alphabet_)
      fail(ErrorKind::Structural, "error location '" + locations_[*error_] +
                                      "' lacks self-loops for part of the alphabet");
  }
}

std::optional<std::size_t> Automaton::find(std::string_view name) const {
  for (std::size_t i = 0; i < locations_.size(); ++i)
    if (locations_[i] == name) return i;
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> Automaton::outgoing() const {
  std::vector<std::vector<std::size_t>> out(locations_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) out[edges_[i].src].push_back(i);
  return out;
}

bool Automaton::is_deterministic() const {
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    // Edges are sorted by (src, label, dst).
    if (edges_[i].src == edges_[i - 1].src && edges_[i].label == edges_[i - 1].label)
      return false;
  }
  return true;
}

bool Automaton::is_total(const LabelSet& over) const {
  std::vector<LabelSet> present(locations_.size());
  for (const auto& e : edges_) present[e.src].insert(e.label);
  for (const auto& p : present)
    for (const auto& l : over)
      if (!p.contains(l)) return false;
  return true;
}

std::vector<bool> Automaton::reachable() const {
  std::vector<bool> seen(locations_.size(), false);
  auto out = outgoing();
  std::vector<std::size_t> stack{initial_};
  seen[initial_] = true;
  while (!stack.empty()) {
    auto l = stack.back();
    stack.pop_back();
    for (auto ei : out[l]) {
      auto d = edges_[ei].dst;
      if (!seen[d]) {
        seen[d] = true;
        stack.push_back(d);
      }
    }
  }
  return seen;
}

}  // namespace beht
