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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beht/behavioral_type.hpp"

namespace beht {

struct ParseOptions {
  /// Unknown JSON members are errors when strict, warnings otherwise.
  bool strict = true;
};

// ---- behavioral type files (.bt.json) --------------------------------------

/// Parses and validates a type file. Errors carry a JSON pointer to the
/// offending member. Warnings (lenient mode) are appended to `warnings`.
BehavioralType parse_type(std::string_view text, const ParseOptions& options = {},
                          std::vector<std::string>* warnings = nullptr);

/// Canonical form: two-space indented JSON, sorted keys, trailing newline.
std::string serialize_type(const BehavioralType& t);

BehavioralType load_type(const std::filesystem::path& path, const ParseOptions& options = {},
                         std::vector<std::string>* warnings = nullptr);
void save_type(const BehavioralType& t, const std::filesystem::path& path);

// ---- event traces (.jsonl) -------------------------------------------------

enum class EventKind { CallStart, CallEnd };

const char* to_string(EventKind kind) noexcept;

struct TraceEvent {
  std::int64_t seq = 0;
  EventKind kind = EventKind::CallStart;
  std::string component;
  std::optional<std::string> object_id;
  std::string method;
  std::string call_id;
  std::int64_t timestamp_millis = 0;

  bool operator==(const TraceEvent&) const = default;
};

/// One JSON object per line; blank lines are skipped. Checks that seq
/// increases, timestamps never decrease, call ids are not reused while
/// open, and every CALL_END closes an open CALL_START. Errors report
/// "line L, column C".
std::vector<TraceEvent> parse_trace(std::string_view text, const ParseOptions& options = {},
                                    std::vector<std::string>* warnings = nullptr);

std::string serialize_trace(const std::vector<TraceEvent>& events);

std::vector<TraceEvent> load_trace(const std::filesystem::path& path,
                                   const ParseOptions& options = {},
                                   std::vector<std::string>* warnings = nullptr);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace beht
