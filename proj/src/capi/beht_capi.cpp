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

#include "beht/beht.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include "beht/composition.hpp"
#include "beht/error.hpp"
#include "beht/monitor.hpp"
#include "beht/params.hpp"
#include "beht/pipeline.hpp"
#include "beht/registry.hpp"
#include "beht/trace_io.hpp"
#include "json.hpp"

struct beht_type {
  beht::BehavioralType value;
};
struct beht_network {
  beht::Network value;
};
struct beht_monitor {
  beht::MonitorDescriptor value;
};
struct beht_registry {
  beht::Registry value;
};

namespace {

using nlohmann::json;
using namespace beht;

thread_local std::string last_error;
thread_local std::string last_warnings;

struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

beht_status code_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Contract: return BEHT_ERR_CONTRACT;
    case ErrorKind::Precondition: return BEHT_ERR_PRECONDITION;
    case ErrorKind::Structural: return BEHT_ERR_STRUCTURAL;
    case ErrorKind::Parse: return BEHT_ERR_PARSE;
    case ErrorKind::Resource: return BEHT_ERR_RESOURCE;
    case ErrorKind::Io: return BEHT_ERR_IO;
    case ErrorKind::Incompatible: return BEHT_ERR_INCOMPATIBLE;
  }
  return BEHT_ERR_INTERNAL;
}

template <class F>
beht_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const Error& e) {
    last_error = e.what();
    return code_of(e.kind());
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return BEHT_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BEHT_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BEHT_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw ArgumentError(std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) { *out = dup(j.dump(2) + "\n"); }

std::string str(const char* s) { return s ? std::string(s) : std::string(); }

std::vector<std::string> split_csv(const char* s) {
  std::vector<std::string> out;
  if (!s) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

ParseOptions options(int strict) { return ParseOptions{strict != 0}; }

void keep_warnings(const std::vector<std::string>& w) {
  last_warnings.clear();
  for (const auto& s : w) last_warnings += s + "\n";
}

json labels_json(const std::vector<Label>& word) {
  json out = json::array();
  for (const auto& l : word) out.push_back(l.str());
  return out;
}

json trace_json(const std::vector<WitnessStep>& trace) {
  json out = json::array();
  for (const auto& s : trace) out.push_back(json{{"components", s.component_ids}, {"label", s.label.str()}});
  return out;
}

json verdict_json(const EqualityVerdict& v, const char* yes, const char* no) {
  json j{{"verdict", v.equal ? yes : no}};
  if (v.location_mapping) j["location_mapping"] = *v.location_mapping;
  if (v.counterexample) j["counterexample"] = labels_json(*v.counterexample);
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

std::size_t bound_or_default(std::size_t bound) { return bound == 0 ? ExploreOptions{}.bound : bound; }

json state_json(const Network& n, const ProductState& s) {
  json out = json::object();
  for (std::size_t i = 0; i < s.size(); ++i) out[n[i].id] = n[i].automaton.name(s[i]);
  return out;
}

json violation_json(const Violation& v) {
  json j{{"kind", to_string(v.kind)},
         {"event_index", v.event_index},
         {"method", v.method},
         {"state", v.state},
         {"detail", v.detail}};
  if (v.object_id) j["object_id"] = *v.object_id;
  if (v.elapsed_millis) j["elapsed_millis"] = *v.elapsed_millis;
  if (v.limit_millis) j["limit_millis"] = *v.limit_millis;
  return j;
}

LabelSet shared_labels(const char* text, const Automaton& abstract) {
  if (!text) return abstract.alphabet();
  LabelSet out;
  for (const auto& item : split_csv(text)) {
    Label l = parse_label(item);
    if (abstract.alphabet().contains(l) || item.find(':') != std::string::npos) {
      out.insert(l);
      continue;
    }
    bool found = false;
    for (const auto& a : abstract.alphabet())
      if (a.key() == l.key()) {
        out.insert(a);
        found = true;
      }
    if (!found) out.insert(l);
  }
  return out;
}

beht_status run_monitor(const beht_monitor* m, const std::string& text, const char* dispatch,
                        int latch, const char* constructor, int strict, char** out_json) {
  ReplayOptions o;
  const std::string d = dispatch ? dispatch : "singleton";
  if (d == "singleton") {
    o.dispatch = Dispatch::Singleton;
  } else if (d == "per-object" || d == "per_object") {
    o.dispatch = Dispatch::PerObject;
  } else {
    throw ArgumentError("unknown dispatch '" + d + "'");
  }
  o.latch = latch != 0;
  if (constructor && *constructor) o.constructor = constructor;
  std::vector<std::string> warnings;
  auto events = parse_trace(text, options(strict), &warnings);
  auto report = replay(m->value, events, o);
  report.warnings.insert(report.warnings.begin(), warnings.begin(), warnings.end());
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back(violation_json(v));
  emit(out_json, json{{"verdict", report.ok() ? "pass" : "fail"},
                      {"violations", std::move(violations)},
                      {"warnings", report.warnings},
                      {"events", report.events},
                      {"instances", report.instances},
                      {"dispatch", to_string(o.dispatch)}});
  return report.ok() ? BEHT_OK : BEHT_NEGATIVE;
}

}  // namespace

extern "C" {

const char* beht_version(void) { return "1.0.0"; }

const char* beht_status_name(beht_status status) {
  switch (status) {
    case BEHT_OK: return "ok";
    case BEHT_NEGATIVE: return "negative";
    case BEHT_ERR_ARGUMENT: return "argument";
    case BEHT_ERR_CONTRACT: return "contract";
    case BEHT_ERR_PRECONDITION: return "precondition";
    case BEHT_ERR_STRUCTURAL: return "structural";
    case BEHT_ERR_PARSE: return "parse";
    case BEHT_ERR_RESOURCE: return "resource";
    case BEHT_ERR_IO: return "io";
    case BEHT_ERR_INCOMPATIBLE: return "incompatible";
    case BEHT_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* beht_last_error(void) { return last_error.c_str(); }
const char* beht_last_warnings(void) { return last_warnings.c_str(); }
void beht_string_free(char* s) { std::free(s); }

beht_status beht_type_load(const char* path, int strict, beht_type** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    std::vector<std::string> w;
    auto t = load_type(path, options(strict), &w);
    keep_warnings(w);
    *out = new beht_type{std::move(t)};
    return BEHT_OK;
  });
}

beht_status beht_type_parse(const char* text, int strict, beht_type** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    std::vector<std::string> w;
    auto t = parse_type(text, options(strict), &w);
    keep_warnings(w);
    *out = new beht_type{std::move(t)};
    return BEHT_OK;
  });
}

beht_status beht_type_serialize(const beht_type* t, char** out_json) {
  return guard([&] {
    need(t, "type");
    need(out_json, "out_json");
    *out_json = dup(serialize_type(t->value));
    return BEHT_OK;
  });
}

beht_status beht_type_save(const beht_type* t, const char* path) {
  return guard([&] {
    need(t, "type");
    need(path, "path");
    save_type(t->value, path);
    return BEHT_OK;
  });
}

void beht_type_free(beht_type* t) { delete t; }

beht_status beht_check_equal(const beht_type* a, const char* name_a, const beht_type* b,
                             const char* name_b, int compare_location_names, char** out_json) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out_json, "out_json");
    auto v = check_equal(a->value.resolve(str(name_a)), b->value.resolve(str(name_b)),
                         compare_location_names != 0);
    emit(out_json, verdict_json(v, "equal", "not_equal"));
    return v.equal ? BEHT_OK : BEHT_NEGATIVE;
  });
}

beht_status beht_check_refine(const beht_type* abstract_type, const char* abstract_name,
                              const beht_type* concrete_type, const char* concrete_name,
                              const char* shared, const char* mode, char** out_json) {
  return guard([&] {
    need(abstract_type, "abstract_type");
    need(concrete_type, "concrete_type");
    need(out_json, "out_json");
    const std::string m = mode ? mode : "tau";
    HideMode hm;
    if (m == "tau") {
      hm = HideMode::Tau;
    } else if (m == "delete") {
      hm = HideMode::Delete;
    } else {
      throw ArgumentError("unknown hiding mode '" + m + "'");
    }
    auto abs = abstract_type->value.resolve(str(abstract_name));
    auto con = concrete_type->value.resolve(str(concrete_name));
    auto labels = shared_labels(shared, abs);
    auto v = check_refines(con, abs, labels, hm);
    json j = verdict_json(v, "refines", "not_refines");
    j["mode"] = to_string(hm);
    json sl = json::array();
    for (const auto& l : labels) sl.push_back(l.str());
    j["shared"] = std::move(sl);
    emit(out_json, j);
    return v.equal ? BEHT_OK : BEHT_NEGATIVE;
  });
}

beht_status beht_check_compat(const beht_type* caller, const char* caller_name,
                              const beht_type* callee, const char* callee_name,
                              int restrict_to_callee, char** out_json) {
  return guard([&] {
    need(caller, "caller");
    need(callee, "callee");
    need(out_json, "out_json");
    CompatOptions o;
    o.restrict_to_callee_alphabet = restrict_to_callee != 0;
    auto v = check_compatibility(caller->value.resolve(str(caller_name)),
                                 callee->value.resolve(str(callee_name)), o);
    json j{{"verdict", v.compatible ? "compatible" : "incompatible"},
           {"states_explored", v.states_explored}};
    if (!v.compatible) {
      j["counterexample"] = json{{"trace", trace_json(v.trace)}, {"unmatched", v.unmatched->str()},
                                 {"method", v.unmatched->key()}};
      j["detail"] = v.detail;
    }
    emit(out_json, j);
    return v.compatible ? BEHT_OK : BEHT_NEGATIVE;
  });
}

beht_status beht_network_load(const char* path, int strict, beht_network** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new beht_network{load_network(path, options(strict))};
    return BEHT_OK;
  });
}

void beht_network_free(beht_network* n) { delete n; }

beht_status beht_deadlock(const beht_network* n, const char* priorities_json, std::size_t bound,
                          char** out_json) {
  return guard([&] {
    need(n, "network");
    need(out_json, "out_json");
    std::vector<Priority> prios;
    if (priorities_json) prios = parse_priorities(n->value, priorities_json);
    auto report = find_deadlocks(n->value, prios, ExploreOptions{bound_or_default(bound)});
    json list = json::array();
    for (const auto& d : report.deadlocks)
      list.push_back(json{{"state", state_json(n->value, d.state)},
                          {"state_name", state_name(n->value, d.state)},
                          {"witness", trace_json(d.witness)}});
    const bool free = report.deadlocks.empty();
    emit(out_json, json{{"verdict", free ? "deadlock_free" : "deadlock"},
                        {"deadlocks", std::move(list)},
                        {"priorities_applied", prios.size()},
                        {"states_explored", report.total_reachable}});
    return free ? BEHT_OK : BEHT_NEGATIVE;
  });
}

beht_status beht_priorities(const beht_network* n, std::size_t bound, char** out_json) {
  return guard([&] {
    need(n, "network");
    need(out_json, "out_json");
    auto r = synthesize_priorities(n->value, ExploreOptions{bound_or_default(bound)});
    emit(out_json, json{{"verdict", r.sat ? "sat" : "unsat"},
                        {"priorities", json::parse(serialize_priorities(n->value, r.priorities))},
                        {"states_explored", r.states_explored}});
    return r.sat ? BEHT_OK : BEHT_NEGATIVE;
  });
}

beht_status beht_select_protocol(const beht_type* own, const beht_type* peer, const char* peer_name,
                                 std::size_t bound, char** out_json) {
  return guard([&] {
    need(own, "own");
    need(peer, "peer");
    need(out_json, "out_json");
    auto l = select_protocol(own->value, peer->value.resolve(str(peer_name)),
                             ExploreOptions{bound_or_default(bound)});
    emit(out_json, json{{"verdict", "selected"}, {"label", l.str()}, {"method", l.key()}});
    return BEHT_OK;
  });
}

beht_status beht_instantiate(const beht_type* spec, const char* param, const char* values,
                             const char* scheme, beht_type** out) {
  return guard([&] {
    need(spec, "spec");
    need(param, "param");
    need(out, "out");
    const std::string s = scheme ? scheme : "per-instance";
    Scheme sc;
    if (s == "per-instance" || s == "per_instance") {
      sc = Scheme::PerInstance;
    } else if (s == "shared") {
      sc = Scheme::Shared;
    } else {
      throw ArgumentError("unknown scheme '" + s + "'");
    }
    *out = new beht_type{instantiate(spec->value, param, split_csv(values), sc)};
    return BEHT_OK;
  });
}

beht_status beht_canonicalize(const beht_type* t, beht_type** out) {
  return guard([&] {
    need(t, "type");
    need(out, "out");
    BehavioralType c = t->value;
    for (auto& a : c.automata) {
      a.automaton = canonicalize(a.automaton);
      a.param_locations.clear();
    }
    c.validate();
    *out = new beht_type{std::move(c)};
    return BEHT_OK;
  });
}

beht_status beht_monitor_generate(const beht_type* t, const char* automaton_name, const char* mode,
                                  beht_monitor** out) {
  return guard([&] {
    need(t, "type");
    need(out, "out");
    MonitorMode mm = MonitorMode::Both;
    if (mode) {
      auto parsed = monitor_mode_from_string(mode);
      if (!parsed) throw ArgumentError("unknown monitor mode '" + std::string(mode) + "'");
      mm = *parsed;
    }
    *out = new beht_monitor{generate_monitor(t->value, str(automaton_name), mm)};
    return BEHT_OK;
  });
}

beht_status beht_monitor_load(const char* path, int strict, beht_monitor** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    auto text = read_file(path);
    try {
      *out = new beht_monitor{parse_monitor(text, options(strict))};
    } catch (const Error& e) {
      fail(e.kind(), std::string(path) + ": " + e.what());
    }
    return BEHT_OK;
  });
}

beht_status beht_monitor_parse(const char* text, int strict, beht_monitor** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    *out = new beht_monitor{parse_monitor(text, options(strict))};
    return BEHT_OK;
  });
}

beht_status beht_monitor_serialize(const beht_monitor* m, char** out_json) {
  return guard([&] {
    need(m, "monitor");
    need(out_json, "out_json");
    *out_json = dup(serialize_monitor(m->value));
    return BEHT_OK;
  });
}

beht_status beht_monitor_save(const beht_monitor* m, const char* path) {
  return guard([&] {
    need(m, "monitor");
    need(path, "path");
    write_file(path, serialize_monitor(m->value));
    return BEHT_OK;
  });
}

beht_status beht_monitor_emit_source(const beht_monitor* m, const char* template_id, char** out_text) {
  return guard([&] {
    need(m, "monitor");
    need(out_text, "out_text");
    *out_text = dup(emit_monitor_source(m->value, template_id ? template_id : "java"));
    return BEHT_OK;
  });
}

beht_status beht_monitor_run(const beht_monitor* m, const char* trace_path, const char* dispatch,
                             int latch, const char* constructor, int strict, char** out_json) {
  return guard([&] {
    need(m, "monitor");
    need(trace_path, "trace_path");
    need(out_json, "out_json");
    auto text = read_file(trace_path);
    try {
      return run_monitor(m, text, dispatch, latch, constructor, strict, out_json);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Parse) throw;
      fail(e.kind(), std::string(trace_path) + ": " + e.what());
    }
  });
}

beht_status beht_monitor_run_text(const beht_monitor* m, const char* trace_jsonl, const char* dispatch,
                                  int latch, const char* constructor, int strict, char** out_json) {
  return guard([&] {
    need(m, "monitor");
    need(trace_jsonl, "trace_jsonl");
    need(out_json, "out_json");
    return run_monitor(m, trace_jsonl, dispatch, latch, constructor, strict, out_json);
  });
}

void beht_monitor_free(beht_monitor* m) { delete m; }

beht_status beht_registry_create(beht_registry** out) {
  return guard([&] {
    need(out, "out");
    *out = new beht_registry{};
    return BEHT_OK;
  });
}

beht_status beht_registry_load(const char* dir, beht_registry** out) {
  return guard([&] {
    need(dir, "dir");
    need(out, "out");
    *out = new beht_registry{Registry::load(dir)};
    return BEHT_OK;
  });
}

beht_status beht_registry_save(const beht_registry* r, const char* dir) {
  return guard([&] {
    need(r, "registry");
    need(dir, "dir");
    r->value.save(dir);
    return BEHT_OK;
  });
}

beht_status beht_registry_register(beht_registry* r, const char* component_id, const char* interfaces,
                                   const beht_type* const* types, std::size_t count) {
  return guard([&] {
    need(r, "registry");
    need(component_id, "component_id");
    if (count) need(types, "types");
    RegistryEntry e;
    e.component_id = component_id;
    e.interfaces = split_csv(interfaces);
    if (count) {
      e.behavior.emplace();
      for (std::size_t i = 0; i < count; ++i) {
        need(types[i], "types[i]");
        e.behavior->push_back(types[i]->value);
      }
    }
    r->value.add(std::move(e));
    return BEHT_OK;
  });
}

beht_status beht_registry_unregister(beht_registry* r, const char* component_id) {
  return guard([&] {
    need(r, "registry");
    need(component_id, "component_id");
    return r->value.remove(component_id) ? BEHT_OK : BEHT_NEGATIVE;
  });
}

beht_status beht_registry_describe(const beht_registry* r, char** out_json) {
  return guard([&] {
    need(r, "registry");
    need(out_json, "out_json");
    json comps = json::array();
    for (const auto& id : r->value.component_ids()) {
      auto e = r->value.find(id);
      if (!e) continue;
      json models = json::array();
      if (e->behavior)
        for (const auto& t : *e->behavior) {
          for (const auto& a : t.automata) models.push_back(t.id + "/" + a.name);
          for (const auto& x : t.regexes) models.push_back(t.id + "/" + x.name);
        }
      comps.push_back(json{{"id", id}, {"interfaces", e->interfaces}, {"meta", e->meta},
                           {"models", std::move(models)}});
    }
    emit(out_json, json{{"components", std::move(comps)}, {"size", r->value.size()}});
    return BEHT_OK;
  });
}

beht_status beht_registry_discover(const beht_registry* r, const beht_type* required,
                                   const char* required_name, const char* relation, const char* role,
                                   char** out_json) {
  return guard([&] {
    need(r, "registry");
    need(required, "required");
    need(relation, "relation");
    need(out_json, "out_json");
    auto rel = relation_from_string(relation);
    if (!rel) throw ArgumentError("unknown relation '" + std::string(relation) + "'");
    Role ro = Role::AsCaller;
    if (role) {
      auto parsed = role_from_string(role);
      if (!parsed) throw ArgumentError("unknown role '" + std::string(role) + "'");
      ro = *parsed;
    }
    auto matches = r->value.discover(required->value.resolve(str(required_name)), *rel, ro);
    json list = json::array();
    for (const auto& m : matches)
      list.push_back(json{{"component_id", m.component_id}, {"model", m.model},
                          {"relation", to_string(m.strength)}});
    emit(out_json, json{{"verdict", matches.empty() ? "no_match" : "match"},
                        {"relation", to_string(*rel)},
                        {"role", to_string(ro)},
                        {"matches", std::move(list)}});
    return matches.empty() ? BEHT_NEGATIVE : BEHT_OK;
  });
}

void beht_registry_free(beht_registry* r) { delete r; }

}  // extern "C"
