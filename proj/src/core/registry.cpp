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

#include "beht/registry.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "beht/composition.hpp"
#include "beht/error.hpp"
#include "beht/pipeline.hpp"
#include "beht/trace_io.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace beht {

using nlohmann::json;

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::Equal: return "EQUAL";
    case Relation::Refines: return "REFINES";
    case Relation::Compatible: return "COMPATIBLE";
  }
  return "EQUAL";
}

const char* to_string(Role r) noexcept { return r == Role::AsCaller ? "caller" : "callee"; }

std::optional<Relation> relation_from_string(std::string_view text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "equal") return Relation::Equal;
  if (t == "refines" || t == "refine") return Relation::Refines;
  if (t == "compatible" || t == "compat") return Relation::Compatible;
  return std::nullopt;
}

std::optional<Role> role_from_string(std::string_view text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "caller" || t == "as_caller") return Role::AsCaller;
  if (t == "callee" || t == "as_callee") return Role::AsCallee;
  return std::nullopt;
}

void RegistryEntry::validate() const {
  if (component_id.empty()) fail(ErrorKind::Structural, "registry entry with an empty component id");
  if (component_id.find_first_of("/\\") != std::string::npos || component_id == "." || component_id == "..")
    fail(ErrorKind::Structural, "component id '" + component_id + "' is not a valid directory name");
  if (behavior) {
    if (behavior->empty())
      fail(ErrorKind::Structural, "component '" + component_id + "': BEHAVIOR must not be empty");
    std::set<std::string> ids;
    for (const auto& t : *behavior) {
      t.validate();
      if (!ids.insert(t.id).second)
        fail(ErrorKind::Structural, "component '" + component_id + "': duplicate type id '" + t.id + "'");
    }
  }
}

Registry::Registry(const Registry& other) : entries_(other.snapshot()) {}

Registry& Registry::operator=(const Registry& other) {
  if (this != &other) {
    auto copy = other.snapshot();
    std::unique_lock lock(mutex_);
    entries_ = std::move(copy);
  }
  return *this;
}

void Registry::add(RegistryEntry entry) {
  entry.validate();
  auto ptr = std::make_shared<const RegistryEntry>(std::move(entry));
  std::unique_lock lock(mutex_);
  entries_[ptr->component_id] = std::move(ptr);
}

bool Registry::remove(const std::string& component_id) {
  std::unique_lock lock(mutex_);
  return entries_.erase(component_id) > 0;
}

std::size_t Registry::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::vector<std::string> Registry::component_ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

std::shared_ptr<const RegistryEntry> Registry::find(const std::string& component_id) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(component_id);
  return it == entries_.end() ? nullptr : it->second;
}

std::map<std::string, std::shared_ptr<const RegistryEntry>> Registry::snapshot() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

std::vector<Match> Registry::discover(const Automaton& required, Relation relation, Role role) const {
  std::vector<Match> out;
  for (const auto& [id, entry] : snapshot()) {
    if (!entry->behavior) continue;
    for (const auto& t : *entry->behavior) {
      std::vector<std::string> names;
      for (const auto& a : t.automata) names.push_back(a.name);
      for (const auto& r : t.regexes) names.push_back(r.name);
      for (const auto& name : names) {
        const Automaton model = t.resolve(name);
        auto equal = [&] { return check_equal(required, model); };
        auto refines = [&] { return check_refines(model, required, required.alphabet()); };
        std::optional<Relation> strength;
        std::string detail;
        if (relation == Relation::Equal) {
          auto v = equal();
          if (v.equal) strength = Relation::Equal;
        } else if (relation == Relation::Refines) {
          auto v = refines();
          if (v.equal) strength = equal().equal ? Relation::Equal : Relation::Refines;
        } else {
          auto v = role == Role::AsCaller ? check_compatibility(required, model)
                                          : check_compatibility(model, required);
          if (v.compatible) {
            strength = Relation::Compatible;
            const bool covers = std::includes(model.alphabet().begin(), model.alphabet().end(),
                                              required.alphabet().begin(), required.alphabet().end());
            if (covers && refines().equal) strength = equal().equal ? Relation::Equal : Relation::Refines;
          }
        }
        if (strength) out.push_back(Match{id, t.id + "/" + name, *strength, detail});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    return std::tie(a.strength, a.component_id, a.model) < std::tie(b.strength, b.component_id, b.model);
  });
  return out;
}

Registry Registry::load(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) fail(ErrorKind::Io, "'" + dir.string() + "' is not a directory");
  std::vector<fs::path> subdirs;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_directory()) subdirs.push_back(e.path());
  std::sort(subdirs.begin(), subdirs.end());
  Registry reg;
  for (const auto& sub : subdirs) {
    RegistryEntry entry;
    entry.component_id = sub.filename().string();
    const auto meta_file = sub / "entry.json";
    if (fs::exists(meta_file)) {
      auto root = detail::parse_json(read_file(meta_file), meta_file.string());
      detail::expect_object(root, "");
      detail::Members{}.check(root, "", {"interfaces", "meta"});
      if (root.contains("interfaces")) entry.interfaces = detail::get_strings(root, "interfaces", "");
      if (root.contains("meta")) {
        if (!root["meta"].is_object()) fail(ErrorKind::Parse, meta_file.string() + ": /meta: expected an object");
        for (const auto& [k, v] : root["meta"].items()) {
          if (!v.is_string()) fail(ErrorKind::Parse, meta_file.string() + ": /meta/" + k + ": expected a string");
          entry.meta[k] = v.get<std::string>();
        }
      }
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(sub)) {
      const auto name = e.path().filename().string();
      if (e.is_regular_file() && name.size() > 8 && name.ends_with(".bt.json")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (!files.empty()) {
      entry.behavior.emplace();
      for (const auto& f : files) entry.behavior->push_back(load_type(f));
    }
    reg.add(std::move(entry));
  }
  return reg;
}

void Registry::save(const std::filesystem::path& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const auto& [id, entry] : snapshot()) {
    const auto sub = dir / id;
    fs::create_directories(sub);
    json meta = json::object();
    for (const auto& [k, v] : entry->meta) meta[k] = v;
    write_file(sub / "entry.json", json{{"interfaces", entry->interfaces}, {"meta", meta}}.dump(2) + "\n");
    if (entry->behavior)
      for (const auto& t : *entry->behavior) save_type(t, sub / (t.id + ".bt.json"));
  }
}

}  // namespace beht
