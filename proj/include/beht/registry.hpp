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

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "beht/behavioral_type.hpp"

namespace beht {

enum class Relation { Equal, Refines, Compatible };
enum class Role { AsCaller, AsCallee };

const char* to_string(Relation r) noexcept;  // EQUAL, REFINES, COMPATIBLE
const char* to_string(Role r) noexcept;      // caller, callee
std::optional<Relation> relation_from_string(std::string_view text);
std::optional<Role> role_from_string(std::string_view text);

struct RegistryEntry {
  std::string component_id;
  std::vector<std::string> interfaces;
  std::map<std::string, std::string> meta;
  /// The "BEHAVIOR" property; non-empty when present.
  std::optional<std::vector<BehavioralType>> behavior;

  /// Throws Error(Structural).
  void validate() const;
};

struct Match {
  std::string component_id;
  std::string model;  // "<type id>/<automaton or regex name>"
  /// Strongest of EQUAL, REFINES and the requested relation that holds. A
  /// compatible match only ranks as REFINES when it uses every required label.
  Relation strength = Relation::Compatible;
  std::string detail;
};

class Registry {
 public:
  Registry() = default;
  Registry(const Registry& other);
  Registry& operator=(const Registry& other);

  /// Replaces any entry with the same component id.
  void add(RegistryEntry entry);
  bool remove(const std::string& component_id);
  std::size_t size() const;
  std::vector<std::string> component_ids() const;
  std::shared_ptr<const RegistryEntry> find(const std::string& component_id) const;

  /// Every registered model for which the requested relation holds against
  /// `required`. REFINES reads "the model refines required" over required's
  /// alphabet; for COMPATIBLE the role says which side `required` plays.
  /// Ranked by strength, then component id and model.
  std::vector<Match> discover(const Automaton& required, Relation relation,
                              Role role = Role::AsCaller) const;

  /// Layout: <dir>/<component_id>/entry.json ({interfaces, meta}) and one
  /// <type id>.bt.json per behavioral type.
  static Registry load(const std::filesystem::path& dir);
  void save(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::shared_ptr<const RegistryEntry>> snapshot() const;

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const RegistryEntry>> entries_;
};

}  // namespace beht
