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

#include "beht/params.hpp"

#include <map>

#include "beht/error.hpp"
#include "beht/pipeline.hpp"

namespace beht {

namespace {

void check_values(const std::string& param, const std::vector<std::string>& values) {
  if (values.empty()) fail(ErrorKind::Contract, "no values given for parameter '" + param + "'");
  std::set<std::string> seen;
  for (const auto& v : values) {
    if (v.empty()) fail(ErrorKind::Contract, "empty value for parameter '" + param + "'");
    if (!seen.insert(v).second)
      fail(ErrorKind::Contract, "duplicate value '" + v + "' for parameter '" + param + "'");
  }
}

Label bind(const Label& l, const std::string& param, const std::string& value) {
  if (!l.param || *l.param != param) return l;
  return make_label(l.dir, l.name + value);
}

void check_initial(const NamedAutomaton& a) {
  const auto& aut = a.automaton;
  if (a.param_locations.contains(aut.name(aut.initial())))
    fail(ErrorKind::Contract, "automaton '" + a.name + "': the initial location '" +
                                  aut.name(aut.initial()) + "' cannot be parameterized");
}

LabelSet used_labels(const std::vector<Edge>& edges) {
  LabelSet out;
  for (const auto& e : edges) out.insert(e.label);
  return out;
}

bool has_param(const LabelSet& labels) {
  for (const auto& l : labels)
    if (l.param) return true;
  return false;
}

}  // namespace

const char* to_string(Scheme scheme) noexcept {
  return scheme == Scheme::PerInstance ? "per-instance" : "shared";
}

std::set<std::string> parameters(const Regex& r) {
  std::set<std::string> out;
  for (const auto& l : r.atoms())
    if (l.param) out.insert(*l.param);
  return out;
}

std::set<std::string> parameters(const NamedAutomaton& a) {
  std::set<std::string> out;
  for (const auto& l : a.automaton.alphabet())
    if (l.param) out.insert(*l.param);
  return out;
}

std::set<std::string> parameters(const BehavioralType& t) {
  std::set<std::string> out;
  for (const auto& a : t.automata) out.merge(parameters(a));
  for (const auto& r : t.regexes) out.merge(parameters(r.expr));
  return out;
}

Label substitute(const Label& l, const Binding& binding) {
  if (!l.param) return l;
  auto it = binding.find(*l.param);
  if (it == binding.end())
    fail(ErrorKind::Contract, "parameter '" + *l.param + "' of label '" + l.str() + "' is unbound");
  return make_label(l.dir, l.name + it->second);
}

Regex substitute(const Regex& r, const Binding& binding) {
  Regex out = r;
  if (out.kind == Regex::Kind::Atom) out.atom = substitute(r.atom, binding);
  for (auto& c : out.children) c = substitute(c, binding);
  return out;
}

NamedAutomaton substitute(const NamedAutomaton& a, const Binding& binding) {
  const auto& aut = a.automaton;
  std::string suffix;
  if (!a.param_locations.empty()) {
    if (binding.empty())
      fail(ErrorKind::Contract, "automaton '" + a.name + "' has parameterized locations but no binding");
    for (const auto& [_, v] : binding) suffix += "_" + v;
  }
  std::vector<LocationId> locations = aut.locations();
  for (auto& n : locations)
    if (a.param_locations.contains(n)) n += suffix;
  LabelSet alphabet;
  for (const auto& l : aut.alphabet()) alphabet.insert(substitute(l, binding));
  std::vector<Edge> edges;
  for (const auto& e : aut.edges()) edges.push_back(Edge{e.src, substitute(e.label, binding), e.dst});
  NamedAutomaton out;
  out.name = a.name;
  out.automaton = Automaton(std::move(locations), aut.initial(), std::move(alphabet),
                            std::move(edges), aut.error_location());
  return out;
}

BehavioralType substitute(const BehavioralType& t, const Binding& binding) {
  BehavioralType out = t;
  for (auto& a : out.automata) a = substitute(a, binding);
  for (auto& r : out.regexes) r.expr = substitute(r.expr, binding);
  out.validate();
  return out;
}

NamedAutomaton instantiate_per_instance(const NamedAutomaton& a, const std::string& param,
                                        const std::vector<std::string>& values) {
  check_values(param, values);
  check_initial(a);
  const auto& aut = a.automaton;
  const std::size_t n = aut.size();

  std::vector<bool> is_param(n, false);
  std::vector<LocationId> locations;
  std::vector<std::size_t> shared_index(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    is_param[i] = a.param_locations.contains(aut.name(i));
    if (!is_param[i]) {
      shared_index[i] = locations.size();
      locations.push_back(aut.name(i));
    }
  }
  // copies[v][i]: index of the copy of parameterized location i for value v
  std::vector<std::vector<std::size_t>> copies(values.size(), std::vector<std::size_t>(n, 0));
  for (std::size_t v = 0; v < values.size(); ++v)
    for (std::size_t i = 0; i < n; ++i)
      if (is_param[i]) {
        copies[v][i] = locations.size();
        locations.push_back(aut.name(i) + "_" + values[v]);
      }

  std::vector<Edge> edges;
  for (const auto& e : aut.edges()) {
    const bool param_label = e.label.param && *e.label.param == param;
    if (!param_label && !is_param[e.src] && !is_param[e.dst]) {
      edges.push_back(Edge{shared_index[e.src], e.label, shared_index[e.dst]});
      continue;
    }
    for (std::size_t v = 0; v < values.size(); ++v) {
      auto map = [&](std::size_t i) { return is_param[i] ? copies[v][i] : shared_index[i]; };
      edges.push_back(Edge{map(e.src), bind(e.label, param, values[v]), map(e.dst)});
    }
  }
  std::optional<std::size_t> err;
  if (aut.error_location()) {
    if (is_param[*aut.error_location()])
      fail(ErrorKind::Contract, "automaton '" + a.name + "': the error location cannot be parameterized");
    err = shared_index[*aut.error_location()];
  }
  NamedAutomaton out;
  out.name = a.name;
  auto alphabet = used_labels(edges);
  out.automaton = Automaton(std::move(locations), shared_index[aut.initial()], alphabet,
                            std::move(edges), err);
  return out;
}

NamedAutomaton instantiate_shared(const NamedAutomaton& a, const std::string& param,
                                  const std::vector<std::string>& values) {
  check_values(param, values);
  check_initial(a);
  const auto& aut = a.automaton;
  std::vector<Edge> edges;
  for (const auto& e : aut.edges()) {
    if (!e.label.param || *e.label.param != param) {
      edges.push_back(e);
      continue;
    }
    for (const auto& v : values) edges.push_back(Edge{e.src, bind(e.label, param, v), e.dst});
  }
  NamedAutomaton out;
  out.name = a.name;
  auto alphabet = used_labels(edges);
  if (has_param(alphabet)) out.param_locations = a.param_locations;
  out.automaton = Automaton(aut.locations(), aut.initial(), alphabet, std::move(edges),
                            aut.error_location());
  return out;
}

BehavioralType instantiate(const BehavioralType& t, const std::string& param,
                           const std::vector<std::string>& values, Scheme scheme) {
  check_values(param, values);
  BehavioralType out;
  out.id = t.id;
  out.maxtimes = t.maxtimes;
  out.meta = t.meta;
  auto apply = [&](const NamedAutomaton& a) {
    return scheme == Scheme::PerInstance ? instantiate_per_instance(a, param, values)
                                         : instantiate_shared(a, param, values);
  };
  for (const auto& a : t.automata) out.automata.push_back(apply(a));
  for (const auto& r : t.regexes) {
    if (!parameters(r.expr).contains(param)) {
      out.regexes.push_back(r);
    } else if (values.size() == 1) {
      out.regexes.push_back(NamedRegex{r.name, substitute(r.expr, Binding{{param, values[0]}})});
    } else {
      out.automata.push_back(apply(NamedAutomaton{r.name, regex_to_automaton(r.expr), {}}));
    }
  }
  std::set<std::string> names;
  for (const auto& l : out.labels()) names.insert(l.name);
  MaxTimeTable limits;
  for (const auto& [method, limit] : out.maxtimes) {
    if (names.contains(method)) limits.emplace(method, limit);
    for (const auto& v : values)
      if (names.contains(method + v)) limits.emplace(method + v, limit);
  }
  out.maxtimes = std::move(limits);
  out.validate();
  return out;
}

}  // namespace beht
