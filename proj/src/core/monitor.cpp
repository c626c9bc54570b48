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

#include "beht/monitor.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "beht/error.hpp"
#include "beht/pipeline.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace beht {

using nlohmann::json;

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool keep(Direction dir, MonitorMode mode) {
  switch (mode) {
    case MonitorMode::IncOnly: return dir != Direction::Out;
    case MonitorMode::OutOnly: return dir != Direction::Inc;
    case MonitorMode::Both: return true;
  }
  return true;
}

std::string class_name(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "m" + out;
  return out + "_mon";
}

std::string java_string(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

const char* to_string(MonitorMode mode) noexcept {
  switch (mode) {
    case MonitorMode::IncOnly: return "INC_ONLY";
    case MonitorMode::OutOnly: return "OUT_ONLY";
    case MonitorMode::Both: return "BOTH";
  }
  return "BOTH";
}

std::optional<MonitorMode> monitor_mode_from_string(std::string_view text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::toupper(static_cast<unsigned char>(c == '-' ? '_' : c)));
  if (t == "INC_ONLY" || t == "INC") return MonitorMode::IncOnly;
  if (t == "OUT_ONLY" || t == "OUT") return MonitorMode::OutOnly;
  if (t == "BOTH") return MonitorMode::Both;
  return std::nullopt;
}

const char* to_string(ViolationKind kind) noexcept {
  return kind == ViolationKind::Protocol ? "PROTOCOL" : "TIMEOUT";
}

const char* to_string(Dispatch d) noexcept {
  return d == Dispatch::Singleton ? "singleton" : "per-object";
}

void MonitorDescriptor::validate() const {
  std::set<std::string> locs;
  for (const auto& l : locations)
    if (!locs.insert(l).second) fail(ErrorKind::Structural, "monitor '" + name + "': duplicate location '" + l + "'");
  if (!locs.contains(initial))
    fail(ErrorKind::Structural, "monitor '" + name + "': initial location '" + initial + "' is not declared");
  for (const auto& [key, dst] : transitions) {
    if (!locs.contains(key.first) || !locs.contains(dst))
      fail(ErrorKind::Structural, "monitor '" + name + "': transition (" + key.first + ", " +
                                      key.second + ") -> " + dst + " uses an undeclared location");
    if (key.second.empty()) fail(ErrorKind::Structural, "monitor '" + name + "': empty event name");
  }
  for (const auto& [method, limit] : maxtimes)
    if (limit <= 0)
      fail(ErrorKind::Structural, "monitor '" + name + "': limit for '" + method + "' must be positive");
}

const std::string* MonitorDescriptor::next(const std::string& location, const std::string& event) const {
  auto it = transitions.find({location, event});
  return it == transitions.end() ? nullptr : &it->second;
}

MonitorDescriptor generate_monitor(const BehavioralType& t, std::string_view automaton_name,
                                   MonitorMode mode) {
  if (!automaton_name.empty() && !t.find_automaton(automaton_name) && !t.find_regex(automaton_name))
    fail(ErrorKind::Contract, "type '" + t.id + "' has no automaton named '" + std::string(automaton_name) + "'");
  if (t.automata.empty() && t.regexes.empty())
    fail(ErrorKind::Contract, "type '" + t.id + "' has no automaton");
  const Automaton source = strip_error(t.resolve(automaton_name));

  std::vector<Edge> edges;
  LabelSet alphabet;
  for (const auto& e : source.edges()) {
    if (!keep(e.label.dir, mode)) continue;
    Label l{Direction::Neutral, e.label.name, e.label.param};
    alphabet.insert(l);
    edges.push_back(Edge{e.src, l, e.dst});
  }
  Automaton a = determinize(Automaton(source.locations(), source.initial(), alphabet, edges));
  if (!std::all_of(a.locations().begin(), a.locations().end(), is_identifier)) a = normalize(a);

  MonitorDescriptor d;
  d.name = t.id;
  if (!automaton_name.empty() && t.automata.size() + t.regexes.size() > 1)
    d.name += "_" + std::string(automaton_name);
  for (const auto& l : a.locations()) d.locations.push_back("LOC" + l);
  d.initial = "LOC" + a.name(a.initial());
  for (const auto& e : a.edges())
    d.transitions[{"LOC" + a.name(e.src), e.label.key()}] = "LOC" + a.name(e.dst);
  d.maxtimes = t.maxtimes;
  d.mode = mode;
  d.validate();
  return d;
}

std::string serialize_monitor(const MonitorDescriptor& d) {
  json transitions = json::array();
  for (const auto& [key, dst] : d.transitions)
    transitions.push_back(json::array({key.first, key.second, dst}));
  json maxtimes = json::object();
  for (const auto& [k, v] : d.maxtimes) maxtimes[k] = v;
  json root{{"name", d.name},           {"locations", d.locations},
            {"initial", d.initial},     {"transitions", std::move(transitions)},
            {"maxtimes", std::move(maxtimes)}, {"mode", to_string(d.mode)}};
  return root.dump(2) + "\n";
}

MonitorDescriptor parse_monitor(std::string_view text, const ParseOptions& options) {
  auto root = detail::parse_json(text, "monitor file");
  detail::expect_object(root, "");
  detail::Members{options.strict, nullptr}.check(
      root, "", {"name", "locations", "initial", "transitions", "maxtimes", "mode"});
  MonitorDescriptor d;
  d.name = detail::get_string(root, "name", "");
  d.locations = detail::get_strings(root, "locations", "");
  d.initial = detail::get_string(root, "initial", "");
  const auto& ts = detail::get_array(root, "transitions", "");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    const auto at = "/transitions/" + std::to_string(i);
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_string())
      fail(ErrorKind::Parse, at + ": expected [location, event, location]");
    if (!d.transitions.emplace(std::pair{t[0].get<std::string>(), t[1].get<std::string>()},
                               t[2].get<std::string>()).second)
      fail(ErrorKind::Parse, at + ": duplicate (location, event) pair");
  }
  if (root.contains("maxtimes")) {
    const auto& m = root["maxtimes"];
    if (!m.is_object()) fail(ErrorKind::Parse, "/maxtimes: expected an object");
    for (const auto& [k, v] : m.items()) {
      if (!v.is_number_integer()) fail(ErrorKind::Parse, "/maxtimes/" + k + ": expected an integer");
      d.maxtimes[k] = v.get<std::int64_t>();
    }
  }
  if (root.contains("mode")) {
    auto mode = monitor_mode_from_string(detail::get_string(root, "mode", ""));
    if (!mode) fail(ErrorKind::Parse, "/mode: expected INC_ONLY, OUT_ONLY or BOTH");
    d.mode = *mode;
  }
  try {
    d.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Parse, e.what());
  }
  return d;
}

std::vector<std::string> monitor_templates() { return {"java", "fig10"}; }

std::string emit_monitor_source(const MonitorDescriptor& d, std::string_view template_id) {
  if (template_id != "java" && template_id != "fig10")
    fail(ErrorKind::Contract, "unknown monitor template '" + std::string(template_id) + "'");
  for (const auto& l : d.locations)
    if (!is_identifier(l))
      fail(ErrorKind::Contract, "location '" + l + "' is not a valid enumeration constant");

  const auto cls = class_name(d.name);
  std::ostringstream o;
  o << "package monitors;\n\n"
    << "import java.util.HashMap;\n"
    << "import java.util.Map;\n\n"
    << "public class " << cls << " {\n\n"
    << "   public Map<String,Long> maxtimes = new HashMap<String,Long>();\n\n"
    << "   public " << cls << "() {\n";
  for (const auto& [method, limit] : d.maxtimes)
    o << "      maxtimes.put(\"" << java_string(method) << "\",new Long(" << limit << "));\n";
  o << "   }\n\n"
    << "   public static enum LOCATION {\n     ";
  for (std::size_t i = 0; i < d.locations.size(); ++i) o << (i ? " , " : "") << d.locations[i];
  o << "\n   }\n\n"
    << "   protected LOCATION state = LOCATION." << d.initial << ";\n\n"
    << "   public boolean nextState(String event) {\n"
    << "      boolean rval = false;\n"
    << "      switch (state) {\n";
  for (const auto& loc : d.locations) {
    o << "         case " << loc << ":\n";
    for (const auto& [key, dst] : d.transitions)
      if (key.first == loc)
        o << "            if (event.equals(\"" << java_string(key.second) << "\")) {\n"
          << "               state = LOCATION." << dst << ";\n"
          << "               rval = true;\n"
          << "            }\n";
    o << "            break;\n";
  }
  o << "      }\n"
    << "      return rval;\n"
    << "   }\n"
    << "}\n";
  return o.str();
}

MonitorInstance::MonitorInstance(std::shared_ptr<const MonitorDescriptor> d, bool latch)
    : d_(std::move(d)), latch_(latch) {
  if (!d_) fail(ErrorKind::Contract, "monitor instance without a descriptor");
  state_ = d_->initial;
}

void MonitorInstance::require_live() const {
  if (latched())
    fail(ErrorKind::Contract, "monitor '" + d_->name + "' is latched after a violation");
}

bool MonitorInstance::step(const std::string& event, std::size_t event_index) {
  require_live();
  if (const auto* dst = d_->next(state_, event)) {
    state_ = *dst;
    return true;
  }
  Violation v;
  v.kind = ViolationKind::Protocol;
  v.event_index = event_index;
  v.method = event;
  v.state = state_;
  v.detail = "event '" + event + "' is not allowed at " + state_;
  violations_.push_back(std::move(v));
  return false;
}

bool MonitorInstance::on_call_start(const std::string& call_id, const std::string& method,
                                    std::int64_t timestamp_millis, std::size_t event_index) {
  require_live();
  if (pending_.contains(call_id))
    fail(ErrorKind::Contract, "call id '" + call_id + "' is already pending");
  bool ok = step(method, event_index);
  pending_[call_id] = {method, timestamp_millis};
  return ok;
}

bool MonitorInstance::on_call_end(const std::string& call_id, std::int64_t timestamp_millis,
                                  std::size_t event_index) {
  require_live();
  auto it = pending_.find(call_id);
  if (it == pending_.end()) fail(ErrorKind::Contract, "call id '" + call_id + "' is not pending");
  auto [method, start] = it->second;
  pending_.erase(it);
  auto limit = d_->maxtimes.find(method);
  if (limit == d_->maxtimes.end()) return true;
  const auto elapsed = timestamp_millis - start;
  if (elapsed <= limit->second) return true;
  Violation v;
  v.kind = ViolationKind::Timeout;
  v.event_index = event_index;
  v.method = method;
  v.state = state_;
  v.elapsed_millis = elapsed;
  v.limit_millis = limit->second;
  v.detail = "call '" + call_id + "' of '" + method + "' took " + std::to_string(elapsed) +
             " ms, limit " + std::to_string(limit->second) + " ms";
  violations_.push_back(std::move(v));
  return false;
}

MonitorGroup::MonitorGroup(std::shared_ptr<const MonitorDescriptor> d, ReplayOptions options)
    : d_(std::move(d)), options_(std::move(options)) {
  if (!d_) fail(ErrorKind::Contract, "monitor group without a descriptor");
  if (options_.dispatch == Dispatch::Singleton) {
    single_.emplace(d_, options_.latch);
    return;
  }
  if (options_.constructor) {
    constructor_ = *options_.constructor;
    return;
  }
  std::set<std::string> first;
  for (const auto& [key, _] : d_->transitions)
    if (key.first == d_->initial) first.insert(key.second);
  if (first.size() != 1)
    fail(ErrorKind::Contract, "monitor '" + d_->name + "' enables " + std::to_string(first.size()) +
                                  " events initially; name the constructor event explicitly");
  constructor_ = *first.begin();
}

bool MonitorGroup::dispatch(const TraceEvent& ev, std::size_t event_index) {
  ++events_;
  MonitorInstance* m = nullptr;
  if (single_) {
    m = &*single_;
  } else {
    const std::string id = ev.object_id.value_or("");
    auto it = objects_.find(id);
    if (it != objects_.end()) {
      m = &it->second;
    } else if (ev.object_id && ev.kind == EventKind::CallStart && ev.method == constructor_ &&
               !orphans_.contains(id)) {
      m = &objects_.emplace(id, MonitorInstance(d_, options_.latch)).first->second;
    } else {
      auto& list = orphans_[id];
      if (options_.latch && !list.empty()) return false;
      if (ev.kind == EventKind::CallEnd && list.empty()) return true;
      Violation v;
      v.kind = ViolationKind::Protocol;
      v.event_index = event_index;
      if (ev.object_id) v.object_id = ev.object_id;
      v.method = ev.method;
      v.state = d_->initial;
      v.detail = ev.object_id ? "object '" + id + "' used before its constructor event '" + constructor_ + "'"
                              : std::string("event without an object_id under per-object dispatch");
      list.push_back(std::move(v));
      return false;
    }
  }
  if (m->latched()) return false;
  bool ok = true;
  if (ev.kind == EventKind::CallStart)
    ok = m->on_call_start(ev.call_id, ev.method, ev.timestamp_millis, event_index);
  else if (m->pending().contains(ev.call_id))
    ok = m->on_call_end(ev.call_id, ev.timestamp_millis, event_index);
  if (!ok && single_ && ev.object_id) single_objects_[event_index] = *ev.object_id;
  return ok;
}

ReplayReport MonitorGroup::finish() const {
  ReplayReport r;
  r.events = events_;
  auto collect = [&](const MonitorInstance& m, const std::optional<std::string>& id) {
    for (auto v : m.violations()) {
      if (id) v.object_id = id;
      r.violations.push_back(std::move(v));
    }
    for (const auto& [call, info] : m.pending())
      r.warnings.push_back("call '" + call + "' of '" + info.first + "'" +
                           (id ? " on object '" + *id + "'" : std::string()) +
                           " started at " + std::to_string(info.second) + " ms has no CALL_END");
  };
  if (single_) {
    collect(*single_, std::nullopt);
    for (auto& v : r.violations)
      if (auto it = single_objects_.find(v.event_index); it != single_objects_.end()) v.object_id = it->second;
    r.instances = 1;
  }
  for (const auto& [id, m] : objects_) collect(m, id);
  for (const auto& [id, list] : orphans_) r.violations.insert(r.violations.end(), list.begin(), list.end());
  r.instances += objects_.size();
  std::stable_sort(r.violations.begin(), r.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.event_index < b.event_index; });
  return r;
}

const MonitorInstance* MonitorGroup::instance(const std::string& object_id) const {
  if (single_) return &*single_;
  auto it = objects_.find(object_id);
  return it == objects_.end() ? nullptr : &it->second;
}

ReplayReport replay(const MonitorDescriptor& d, const std::vector<TraceEvent>& events,
                    const ReplayOptions& options) {
  MonitorGroup g(std::make_shared<const MonitorDescriptor>(d), options);
  for (std::size_t i = 0; i < events.size(); ++i) g.dispatch(events[i], i);
  return g.finish();
}

}  // namespace beht
