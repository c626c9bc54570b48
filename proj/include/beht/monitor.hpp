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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beht/behavioral_type.hpp"
#include "beht/trace_io.hpp"

namespace beht {

/// Which edge directions of the source automaton end up in the monitor.
enum class MonitorMode { IncOnly, OutOnly, Both };

const char* to_string(MonitorMode mode) noexcept;  // INC_ONLY, OUT_ONLY, BOTH
std::optional<MonitorMode> monitor_mode_from_string(std::string_view text);

struct MonitorDescriptor {
  std::string name;
  std::vector<std::string> locations;
  std::string initial;
  std::map<std::pair<std::string, std::string>, std::string> transitions;  // (location, event)
  MaxTimeTable maxtimes;
  MonitorMode mode = MonitorMode::Both;

  bool operator==(const MonitorDescriptor&) const = default;

  /// Throws Error(Structural).
  void validate() const;
  const std::string* next(const std::string& location, const std::string& event) const;
};

/// Keeps the edges selected by `mode`, strips directions, determinizes and
/// prefixes location names with `LOC`. Throws Error(Contract) for an
/// unknown automaton.
MonitorDescriptor generate_monitor(const BehavioralType& t, std::string_view automaton_name,
                                   MonitorMode mode = MonitorMode::Both);

std::string serialize_monitor(const MonitorDescriptor& d);
MonitorDescriptor parse_monitor(std::string_view text, const ParseOptions& options = {});

/// Templates: `java` (alias `fig10`). Throws Error(Contract) for others.
std::string emit_monitor_source(const MonitorDescriptor& d, std::string_view template_id);
std::vector<std::string> monitor_templates();

enum class ViolationKind { Protocol, Timeout };

const char* to_string(ViolationKind kind) noexcept;  // PROTOCOL, TIMEOUT

struct Violation {
  ViolationKind kind = ViolationKind::Protocol;
  std::size_t event_index = 0;
  std::optional<std::string> object_id;
  std::string method;
  std::string state;
  std::string detail;
  std::optional<std::int64_t> elapsed_millis;
  std::optional<std::int64_t> limit_millis;

  bool operator==(const Violation&) const = default;
};

class MonitorInstance {
 public:
  explicit MonitorInstance(std::shared_ptr<const MonitorDescriptor> d, bool latch = true);

  /// False records a PROTOCOL violation and leaves the state unchanged.
  /// Throws Error(Contract) once latched.
  bool step(const std::string& event, std::size_t event_index = 0);

  bool on_call_start(const std::string& call_id, const std::string& method,
                     std::int64_t timestamp_millis, std::size_t event_index = 0);
  /// Throws Error(Contract) for a call id that is not pending.
  bool on_call_end(const std::string& call_id, std::int64_t timestamp_millis,
                   std::size_t event_index = 0);

  const std::string& state() const noexcept { return state_; }
  bool latched() const noexcept { return latch_ && !violations_.empty(); }
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  /// call id -> (method, start timestamp)
  const std::map<std::string, std::pair<std::string, std::int64_t>>& pending() const noexcept {
    return pending_;
  }

 private:
  void require_live() const;

  std::shared_ptr<const MonitorDescriptor> d_;
  bool latch_;
  std::string state_;
  std::map<std::string, std::pair<std::string, std::int64_t>> pending_;
  std::vector<Violation> violations_;
};

enum class Dispatch { Singleton, PerObject };

const char* to_string(Dispatch d) noexcept;  // singleton, per-object

struct ReplayOptions {
  Dispatch dispatch = Dispatch::Singleton;
  bool latch = true;
  /// Method whose call creates a per-object instance. Defaults to the only
  /// event enabled at the initial location.
  std::optional<std::string> constructor;
};

struct ReplayReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  std::size_t events = 0;
  std::size_t instances = 0;

  bool ok() const noexcept { return violations.empty(); }
};

class MonitorGroup {
 public:
  MonitorGroup(std::shared_ptr<const MonitorDescriptor> d, ReplayOptions options = {});

  /// Routes one event; returns false when it caused a violation.
  bool dispatch(const TraceEvent& ev, std::size_t event_index);
  /// Collects violations in event order plus warnings for calls still open.
  ReplayReport finish() const;

  const MonitorInstance* instance(const std::string& object_id) const;

 private:
  std::shared_ptr<const MonitorDescriptor> d_;
  ReplayOptions options_;
  std::string constructor_;
  std::optional<MonitorInstance> single_;
  std::map<std::string, MonitorInstance> objects_;
  std::map<std::string, std::vector<Violation>> orphans_;  // objects never constructed
  std::map<std::size_t, std::string> single_objects_;       // event index -> object id
  std::size_t events_ = 0;
};

ReplayReport replay(const MonitorDescriptor& d, const std::vector<TraceEvent>& events,
                    const ReplayOptions& options = {});

}  // namespace beht
