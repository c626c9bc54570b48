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

#include "beht/trace_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "beht/error.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace beht {

using nlohmann::json;

namespace {

Label parse_alphabet_entry(const json& j, const std::string& at) {
  detail::expect_object(j, at);
  auto dir_text = detail::get_string(j, "dir", at);
  auto dir = direction_from_string(dir_text);
  if (!dir) fail(ErrorKind::Parse, at + "/dir: unknown direction '" + dir_text + "'");
  auto name = detail::get_string(j, "name", at);
  std::optional<std::string> param;
  if (j.contains("param")) param = detail::get_string(j, "param", at);
  try {
    return make_label(*dir, name, param);
  } catch (const Error& e) {
    fail(ErrorKind::Parse, at + ": " + e.what());
  }
}

NamedAutomaton parse_automaton(const json& j, const std::string& at, detail::Members& members) {
  detail::expect_object(j, at);
  members.check(j, at,
                {"name", "alphabet", "locations", "initial", "edges", "error_location",
                 "param_locations"});
  NamedAutomaton out;
  out.name = detail::get_string(j, "name", at);

  LabelSet alphabet;
  const auto& alpha = detail::get_array(j, "alphabet", at);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const auto where = at + "/alphabet/" + std::to_string(i);
    members.check(alpha[i], where, {"dir", "name", "param"});
    if (!alphabet.insert(parse_alphabet_entry(alpha[i], where)).second)
      fail(ErrorKind::Parse, where + ": duplicate alphabet entry");
  }

  std::vector<LocationId> locations;
  std::map<std::string, std::size_t> index;
  const auto& locs = detail::get_array(j, "locations", at);
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const auto where = at + "/locations/" + std::to_string(i);
    if (!locs[i].is_string()) fail(ErrorKind::Parse, where + ": expected a string");
    auto name = locs[i].get<std::string>();
    if (!index.emplace(name, locations.size()).second)
      fail(ErrorKind::Parse, where + ": duplicate location '" + name + "'");
    locations.push_back(std::move(name));
  }
  auto lookup = [&](const std::string& name, const std::string& where) {
    auto it = index.find(name);
    if (it == index.end()) fail(ErrorKind::Parse, where + ": unknown location '" + name + "'");
    return it->second;
  };
  std::size_t initial = lookup(detail::get_string(j, "initial", at), at + "/initial");

  std::vector<Edge> edges;
  const auto& es = detail::get_array(j, "edges", at);
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto where = at + "/edges/" + std::to_string(i);
    const auto& e = es[i];
    if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
        !e[2].is_string())
      fail(ErrorKind::Parse, where + ": expected [source, label, target]");
    Label label;
    try {
      label = parse_label(e[1].get<std::string>());
    } catch (const Error& err) {
      fail(ErrorKind::Parse, where + "/1: " + err.what());
    }
    if (!alphabet.contains(label))
      fail(ErrorKind::Parse, where + "/1: label '" + label.str() + "' is not in the alphabet");
    edges.push_back(Edge{lookup(e[0].get<std::string>(), where + "/0"), std::move(label),
                         lookup(e[2].get<std::string>(), where + "/2")});
  }
  std::optional<std::size_t> err;
  if (j.contains("error_location"))
    err = lookup(detail::get_string(j, "error_location", at), at + "/error_location");
  if (j.contains("param_locations")) {
    const auto& pl = detail::get_array(j, "param_locations", at);
    for (std::size_t i = 0; i < pl.size(); ++i) {
      const auto where = at + "/param_locations/" + std::to_string(i);
      if (!pl[i].is_string()) fail(ErrorKind::Parse, where + ": expected a string");
      lookup(pl[i].get<std::string>(), where);
      out.param_locations.insert(pl[i].get<std::string>());
    }
  }
  try {
    out.automaton = Automaton(std::move(locations), initial, std::move(alphabet),
                              std::move(edges), err);
  } catch (const Error& e) {
    fail(ErrorKind::Parse, at + " (automaton '" + out.name + "'): " + e.what());
  }
  return out;
}

json automaton_json(const NamedAutomaton& na) {
  const auto& a = na.automaton;
  json alphabet = json::array();
  for (const auto& l : a.alphabet()) {
    json entry{{"dir", to_string(l.dir)}, {"name", l.name}};
    if (l.param) entry["param"] = *l.param;
    alphabet.push_back(std::move(entry));
  }
  json edges = json::array();
  for (const auto& e : a.edges())
    edges.push_back(json::array({a.name(e.src), e.label.str(), a.name(e.dst)}));
  json out{{"name", na.name},
           {"alphabet", std::move(alphabet)},
           {"locations", a.locations()},
           {"initial", a.name(a.initial())},
           {"edges", std::move(edges)}};
  if (a.error_location()) out["error_location"] = a.name(*a.error_location());
  if (!na.param_locations.empty()) out["param_locations"] = na.param_locations;
  return out;
}

}  // namespace

BehavioralType parse_type(std::string_view text, const ParseOptions& options,
                          std::vector<std::string>* warnings) {
  json root = detail::parse_json(text, "type file");
  detail::Members members{options.strict, warnings};
  detail::expect_object(root, "");
  members.check(root, "", {"id", "automata", "regexes", "maxtimes", "meta"});

  BehavioralType t;
  t.id = detail::get_string(root, "id", "");
  if (root.contains("automata")) {
    const auto& list = detail::get_array(root, "automata", "");
    for (std::size_t i = 0; i < list.size(); ++i)
      t.automata.push_back(parse_automaton(list[i], "/automata/" + std::to_string(i), members));
  }
  if (root.contains("regexes")) {
    const auto& list = detail::get_array(root, "regexes", "");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto at = "/regexes/" + std::to_string(i);
      detail::expect_object(list[i], at);
      members.check(list[i], at, {"name", "expr"});
      NamedRegex r;
      r.name = detail::get_string(list[i], "name", at);
      try {
        r.expr = parse_regex(detail::get_string(list[i], "expr", at));
      } catch (const Error& e) {
        fail(ErrorKind::Parse, at + "/expr: " + e.what());
      }
      t.regexes.push_back(std::move(r));
    }
  }
  if (root.contains("maxtimes")) {
    const auto& m = root.at("maxtimes");
    if (!m.is_object()) fail(ErrorKind::Parse, "/maxtimes: expected an object");
    for (const auto& [method, limit] : m.items()) {
      if (!limit.is_number_integer())
        fail(ErrorKind::Parse, "/maxtimes/" + method + ": expected an integer (milliseconds)");
      t.maxtimes.emplace(method, limit.get<std::int64_t>());
    }
  }
  if (root.contains("meta")) {
    const auto& m = root.at("meta");
    if (!m.is_object()) fail(ErrorKind::Parse, "/meta: expected an object");
    for (const auto& [key, value] : m.items()) {
      if (!value.is_string()) fail(ErrorKind::Parse, "/meta/" + key + ": expected a string");
      t.meta.emplace(key, value.get<std::string>());
    }
  }
  try {
    t.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Parse, e.what());
  }
  return t;
}

std::string serialize_type(const BehavioralType& t) {
  json automata = json::array();
  for (const auto& a : t.automata) automata.push_back(automaton_json(a));
  json regexes = json::array();
  for (const auto& r : t.regexes) regexes.push_back(json{{"name", r.name}, {"expr", to_string(r.expr)}});
  json maxtimes = json::object();
  for (const auto& [k, v] : t.maxtimes) maxtimes[k] = v;
  json meta = json::object();
  for (const auto& [k, v] : t.meta) meta[k] = v;
  json root{{"id", t.id},
            {"automata", std::move(automata)},
            {"regexes", std::move(regexes)},
            {"maxtimes", std::move(maxtimes)},
            {"meta", std::move(meta)}};
  return root.dump(2) + "\n";
}

BehavioralType load_type(const std::filesystem::path& path, const ParseOptions& options,
                         std::vector<std::string>* warnings) {
  auto text = read_file(path);
  try {
    return parse_type(text, options, warnings);
  } catch (const Error& e) {
    fail(e.kind(), path.string() + ": " + e.what());
  }
}

void save_type(const BehavioralType& t, const std::filesystem::path& path) {
  write_file(path, serialize_type(t));
}

const char* to_string(EventKind kind) noexcept {
  return kind == EventKind::CallStart ? "CALL_START" : "CALL_END";
}

std::vector<TraceEvent> parse_trace(std::string_view text, const ParseOptions& options,
                                    std::vector<std::string>* warnings) {
  std::vector<TraceEvent> events;
  std::map<std::string, std::string> open;  // call id -> method
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    const std::string where = "line " + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(ErrorKind::Parse, where + ", column " + std::to_string(e.byte) + ": malformed JSON (" +
                                 e.what() + ")");
    }
    auto at = [&](std::string_view member) {
      // Column of the member's key in the raw line, 1-based.
      auto k = line.find("\"" + std::string(member) + "\"");
      return where + ", column " + std::to_string(k == std::string_view::npos ? 1 : k + 1);
    };
    if (!j.is_object()) fail(ErrorKind::Parse, where + ", column 1: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
      static const std::set<std::string> known{"seq", "kind", "component", "object_id",
                                               "method", "call_id", "timestamp_millis"};
      if (known.contains(key)) continue;
      if (options.strict) fail(ErrorKind::Parse, at(key) + ": unknown member '" + key + "'");
      if (warnings) warnings->push_back(at(key) + ": ignoring unknown member '" + key + "'");
    }
    auto str = [&](const char* member) {
      if (!j.contains(member)) fail(ErrorKind::Parse, where + ", column 1: missing '" + std::string(member) + "'");
      if (!j[member].is_string()) fail(ErrorKind::Parse, at(member) + ": '" + member + "' must be a string");
      return j[member].get<std::string>();
    };
    auto integer = [&](const char* member) {
      if (!j.contains(member)) fail(ErrorKind::Parse, where + ", column 1: missing '" + std::string(member) + "'");
      if (!j[member].is_number_integer())
        fail(ErrorKind::Parse, at(member) + ": '" + member + "' must be an integer");
      return j[member].get<std::int64_t>();
    };

    TraceEvent ev;
    ev.seq = integer("seq");
    auto kind = str("kind");
    if (kind == "CALL_START") {
      ev.kind = EventKind::CallStart;
    } else if (kind == "CALL_END") {
      ev.kind = EventKind::CallEnd;
    } else {
      fail(ErrorKind::Parse, at("kind") + ": unknown event kind '" + kind + "'");
    }
    ev.component = str("component");
    if (j.contains("object_id")) ev.object_id = str("object_id");
    ev.method = str("method");
    ev.call_id = str("call_id");
    ev.timestamp_millis = integer("timestamp_millis");
    if (ev.timestamp_millis < 0)
      fail(ErrorKind::Parse, at("timestamp_millis") + ": negative timestamp");

    if (!events.empty()) {
      if (ev.seq <= events.back().seq)
        fail(ErrorKind::Parse, at("seq") + ": seq " + std::to_string(ev.seq) +
                                   " does not increase (previous " +
                                   std::to_string(events.back().seq) + ")");
      if (ev.timestamp_millis < events.back().timestamp_millis)
        fail(ErrorKind::Parse, at("timestamp_millis") + ": timestamp decreases from " +
                                   std::to_string(events.back().timestamp_millis) + " to " +
                                   std::to_string(ev.timestamp_millis));
    }
    if (ev.kind == EventKind::CallStart) {
      if (!open.emplace(ev.call_id, ev.method).second)
        fail(ErrorKind::Parse, at("call_id") + ": call id '" + ev.call_id + "' is already open");
    } else {
      auto it = open.find(ev.call_id);
      if (it == open.end())
        fail(ErrorKind::Parse, at("call_id") + ": CALL_END for call id '" + ev.call_id +
                                   "' has no open CALL_START");
      if (it->second != ev.method)
        fail(ErrorKind::Parse, at("method") + ": CALL_END method '" + ev.method +
                                   "' does not match CALL_START method '" + it->second + "'");
      open.erase(it);
    }
    events.push_back(std::move(ev));
  }
  return events;
}

std::string serialize_trace(const std::vector<TraceEvent>& events) {
  std::string out;
  for (const auto& ev : events) {
    json j{{"seq", ev.seq},
           {"kind", to_string(ev.kind)},
           {"component", ev.component},
           {"method", ev.method},
           {"call_id", ev.call_id},
           {"timestamp_millis", ev.timestamp_millis}};
    if (ev.object_id) j["object_id"] = *ev.object_id;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<TraceEvent> load_trace(const std::filesystem::path& path, const ParseOptions& options,
                                   std::vector<std::string>* warnings) {
  auto text = read_file(path);
  try {
    return parse_trace(text, options, warnings);
  } catch (const Error& e) {
    fail(e.kind(), path.string() + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) fail(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

}  // namespace beht
