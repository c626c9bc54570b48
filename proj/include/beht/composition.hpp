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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "beht/automaton.hpp"
#include "beht/behavioral_type.hpp"
#include "beht/trace_io.hpp"

namespace beht {

struct Component {
  std::string id;
  Automaton automaton;
  /// Labels the component synchronizes on. Defaults to the alphabet; a
  /// composed sub-network passes the union of its members' alphabets.
  std::optional<LabelSet> interface;

  const LabelSet& labels() const { return interface ? *interface : automaton.alphabet(); }
};

class Network {
 public:
  Network() = default;
  /// Throws Error(Structural) on duplicate ids or an interface that does
  /// not cover the alphabet.
  explicit Network(std::vector<Component> components);

  const std::vector<Component>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  const Component& operator[](std::size_t i) const { return components_.at(i); }
  std::optional<std::size_t> index_of(std::string_view id) const;

 private:
  std::vector<Component> components_;
};

/// Location index per component, in network order.
using ProductState = std::vector<std::size_t>;

std::string state_name(const Network& n, const ProductState& s);

/// One local edge taken by one component.
struct Step {
  std::size_t component = 0;
  std::size_t edge = 0;

  auto operator<=>(const Step&) const = default;
  bool operator==(const Step&) const = default;
};

struct Interaction {
  Label label;
  std::vector<Step> steps;  // sorted by component

  auto operator<=>(const Interaction&) const = default;
  bool operator==(const Interaction&) const = default;
};

struct Transition {
  Interaction interaction;
  ProductState target;
};

/// Synchronization on label names. For a call name m, every component
/// whose interface holds INC:m or a neutral m listens and must step
/// together; at most one component contributes an OUT:m edge as the
/// caller. A step with an INC participant needs a caller. The joint label
/// is OUT:m when there is a caller and the neutral m otherwise.
///
/// The open variant also exposes steps where INC listeners move without a
/// caller (labelled INC:m), so that the result can be composed further.
std::vector<Transition> enabled_transitions(const Network& n, const ProductState& s,
                                            bool open = false);

struct ExploreOptions {
  std::size_t bound = 1'000'000;
};

struct Product {
  Automaton automaton;
  std::vector<ProductState> states;  // parallel to automaton locations
  LabelSet interface;                // union of the component alphabets
};

/// Reachable product from the initial state. Locations are named
/// `(l0,l1)`. Throws Error(Contract) on an empty network and
/// Error(Resource) when more than `bound` states are reachable.
Product compose(const Network& n, const ExploreOptions& options = {});
Product compose_open(const Network& n, const ExploreOptions& options = {});

/// A BIP interaction priority: `lower` is disabled in every state where
/// `higher` is enabled. `component_id` names a component both take part
/// in, when there is one.
struct Priority {
  std::string component_id;
  Interaction lower;
  Interaction higher;

  auto operator<=>(const Priority&) const = default;
  bool operator==(const Priority&) const = default;
};

/// Transitions left after applying the priorities.
std::vector<Transition> allowed_transitions(const Network& n, const ProductState& s,
                                            const std::vector<Priority>& priorities);

struct WitnessStep {
  std::vector<std::string> component_ids;
  Label label;

  bool operator==(const WitnessStep&) const = default;
};

struct Deadlock {
  ProductState state;
  std::vector<WitnessStep> witness;
};

struct DeadlockReport {
  std::vector<Deadlock> deadlocks;
  std::size_t total_reachable = 0;
};

/// A reachable state is a deadlock when no transition is allowed there while
/// some component still has an OUT or neutral edge at its location.
/// Witnesses are shortest, lexicographically least traces.
DeadlockReport find_deadlocks(const Network& n, const std::vector<Priority>& priorities = {},
                              const ExploreOptions& options = {});

struct CompatOptions {
  /// Check only calls whose name occurs in the callee's alphabet.
  bool restrict_to_callee_alphabet = false;
  std::size_t bound = 1'000'000;
};

struct CompatibilityVerdict {
  bool compatible = true;
  std::vector<WitnessStep> trace;  // reaches the violating state
  std::optional<Label> unmatched;
  std::size_t states_explored = 0;
  std::string detail;
};

/// In every reachable state of the pair, each OUT:m edge the caller can take
/// must meet an INC:m edge of the callee at its current location.
CompatibilityVerdict check_compatibility(const Automaton& caller, const Automaton& callee,
                                         const CompatOptions& options = {});

struct SynthesisResult {
  bool sat = true;
  std::vector<Priority> priorities;
  std::size_t states_explored = 0;
};

/// Safety game on the product: the scheduler avoids the attractor of the
/// deadlock states. Each allowed transition into the attractor from a safe
/// state is demoted below a safe transition there; states whose every
/// transition ends up demoted join the bad set and the game is re-solved.
/// The result is deadlock-free under find_deadlocks.
SynthesisResult synthesize_priorities(const Network& n, const ExploreOptions& options = {});

/// Runs the synthesis on [own, peer] and returns the OUT label own should
/// take first. Ties go to the smallest label. Throws Error(Incompatible)
/// when no choice is safe.
Label select_protocol(const BehavioralType& own, const Automaton& peer,
                      const ExploreOptions& options = {});

/// Human-readable form, e.g. `oldPrtcl < newPrtcl`.
std::string describe(const Priority& p);
/// With the participating components: `oldPrtcl (client) < newPrtcl (client,server)`.
std::string describe(const Network& n, const Priority& p);

// ---- files -------------------------------------------------------------------

/// .net.json: {components: [{id, type_file, automaton_name}]}; type files
/// resolve relative to the network file.
Network load_network(const std::filesystem::path& path, const ParseOptions& options = {});
Network parse_network(std::string_view text, const std::filesystem::path& base_dir,
                      const ParseOptions& options = {});

std::string serialize_priorities(const Network& n, const std::vector<Priority>& priorities);
std::vector<Priority> parse_priorities(const Network& n, std::string_view text);

}  // namespace beht
