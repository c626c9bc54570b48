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

#include "beht/composition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "beht/error.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace beht {

using nlohmann::json;

Network::Network(std::vector<Component> components) : components_(std::move(components)) {
  std::set<std::string> ids;
  for (const auto& c : components_) {
    if (c.id.empty()) fail(ErrorKind::Structural, "network component with an empty id");
    if (!ids.insert(c.id).second)
      fail(ErrorKind::Structural, "duplicate component id '" + c.id + "'");
    if (c.interface)
      for (const auto& l : c.automaton.alphabet())
        if (!c.interface->contains(l))
          fail(ErrorKind::Structural, "component '" + c.id + "': interface lacks label '" +
                                          l.str() + "'");
  }
}

std::optional<std::size_t> Network::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (components_[i].id == id) return i;
  return std::nullopt;
}

std::string state_name(const Network& n, const ProductState& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += n[i].automaton.name(s[i]);
  }
  return out + ")";
}

namespace {

struct StateHash {
  std::size_t operator()(const ProductState& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : s) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

class Sync {
 public:
  explicit Sync(const Network& n) : net_(n) {
    out_.resize(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
      out_[i] = n[i].automaton.outgoing();
      for (const auto& l : n[i].labels())
        if (l.dir != Direction::Out) {
          auto& v = listeners_[l.key()];
          if (v.empty() || v.back() != i) v.push_back(i);
        }
    }
  }

  const Network& net() const { return net_; }

  std::vector<Transition> enabled(const ProductState& s, bool open) const {
    struct KeyInfo {
      std::vector<Step> calls;
      std::map<std::size_t, std::vector<std::size_t>> listen;
    };
    std::map<std::string, KeyInfo> keys;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& edges = net_[i].automaton.edges();
      for (auto e : out_[i][s[i]]) {
        auto& info = keys[edges[e].label.key()];
        if (edges[e].label.dir == Direction::Out)
          info.calls.push_back(Step{i, e});
        else
          info.listen[i].push_back(e);
      }
    }

    std::vector<Transition> result;
    for (const auto& [key, info] : keys) {
      static const std::vector<std::size_t> none;
      auto lit = listeners_.find(key);
      const auto& group = lit == listeners_.end() ? none : lit->second;

      std::vector<std::optional<Step>> callers{std::nullopt};
      for (const auto& c : info.calls) callers.emplace_back(c);

      for (const auto& caller : callers) {
        std::vector<std::size_t> need;
        for (auto i : group)
          if (!caller || caller->component != i) need.push_back(i);
        if (!caller && need.empty()) continue;

        std::vector<const std::vector<std::size_t>*> choices;
        bool blocked = false;
        for (auto i : need) {
          auto it = info.listen.find(i);
          if (it == info.listen.end()) {
            blocked = true;
            break;
          }
          choices.push_back(&it->second);
        }
        if (blocked) continue;

        std::vector<std::size_t> pick(need.size(), 0);
        while (true) {
          std::vector<Step> steps;
          bool has_inc = false;
          if (caller) steps.push_back(*caller);
          for (std::size_t k = 0; k < need.size(); ++k) {
            Step st{need[k], (*choices[k])[pick[k]]};
            has_inc = has_inc || net_[st.component].automaton.edges()[st.edge].label.dir == Direction::Inc;
            steps.push_back(st);
          }
          if (caller || !has_inc || open) {
            std::sort(steps.begin(), steps.end());
            const auto& first = net_[steps[0].component].automaton.edges()[steps[0].edge].label;
            Direction dir = caller ? Direction::Out : has_inc ? Direction::Inc : Direction::Neutral;
            Transition t{Interaction{Label{dir, first.name, first.param}, steps}, s};
            for (const auto& st : steps)
              t.target[st.component] = net_[st.component].automaton.edges()[st.edge].dst;
            result.push_back(std::move(t));
          }
          std::size_t k = 0;
          while (k < pick.size() && ++pick[k] == choices[k]->size()) pick[k++] = 0;
          if (k == pick.size()) break;
        }
      }
    }
    std::sort(result.begin(), result.end(),
              [](const Transition& a, const Transition& b) { return a.interaction < b.interaction; });
    return result;
  }

  bool active(const ProductState& s) const {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (auto e : out_[i][s[i]])
        if (net_[i].automaton.edges()[e].label.dir != Direction::Inc) return true;
    return false;
  }

 private:
  const Network& net_;
  std::vector<std::vector<std::vector<std::size_t>>> out_;
  std::map<std::string, std::vector<std::size_t>> listeners_;
};

using PriorityIndex = std::map<Interaction, std::vector<Interaction>>;

PriorityIndex index_priorities(const std::vector<Priority>& priorities) {
  PriorityIndex idx;
  for (const auto& p : priorities) idx[p.lower].push_back(p.higher);
  return idx;
}

std::vector<std::size_t> allowed_indices(const std::vector<Transition>& ts, const PriorityIndex& idx) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    bool disabled = false;
    auto it = idx.find(ts[k].interaction);
    if (it != idx.end())
      for (const auto& h : it->second)
        for (const auto& t : ts)
          disabled = disabled || t.interaction == h;
    if (!disabled) out.push_back(k);
  }
  return out;
}

struct Graph {
  std::vector<ProductState> states;
  std::vector<std::vector<Transition>> trans;
  std::vector<std::vector<std::size_t>> targets;
  std::vector<std::size_t> parent;        // state index
  std::vector<std::size_t> parent_trans;  // index into trans[parent]
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

Graph explore(const Sync& sync, bool open, std::size_t bound, const PriorityIndex* prios) {
  const auto& n = sync.net();
  if (n.size() == 0) fail(ErrorKind::Contract, "cannot compose an empty network");
  Graph g;
  std::unordered_map<ProductState, std::size_t, StateHash> index;
  ProductState init;
  for (const auto& c : n.components()) init.push_back(c.automaton.initial());
  auto add = [&](ProductState s, std::size_t parent, std::size_t via) {
    auto [it, fresh] = index.emplace(s, g.states.size());
    if (fresh) {
      if (g.states.size() >= bound) {
        std::ostringstream msg;
        msg << "state bound " << bound << " exceeded after exploring " << g.states.size()
            << " product states";
        fail(ErrorKind::Resource, msg.str());
      }
      g.states.push_back(std::move(s));
      g.parent.push_back(parent);
      g.parent_trans.push_back(via);
    }
    return it->second;
  };
  add(init, kNone, kNone);
  for (std::size_t cur = 0; cur < g.states.size(); ++cur) {
    auto ts = sync.enabled(g.states[cur], open);
    if (prios) {
      std::vector<Transition> kept;
      for (auto k : allowed_indices(ts, *prios)) kept.push_back(ts[k]);
      ts = std::move(kept);
    }
    std::vector<std::size_t> tg;
    for (std::size_t k = 0; k < ts.size(); ++k) tg.push_back(add(ts[k].target, cur, k));
    g.trans.push_back(std::move(ts));
    g.targets.push_back(std::move(tg));
  }
  return g;
}

std::vector<WitnessStep> witness(const Network& n, const Graph& g, std::size_t s) {
  std::vector<WitnessStep> out;
  while (g.parent[s] != kNone) {
    const auto& t = g.trans[g.parent[s]][g.parent_trans[s]];
    WitnessStep w;
    w.label = t.interaction.label;
    for (const auto& st : t.interaction.steps) w.component_ids.push_back(n[st.component].id);
    out.push_back(std::move(w));
    s = g.parent[s];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Product build_product(const Network& n, const Graph& g) {
  Product p;
  std::vector<LocationId> names;
  for (const auto& s : g.states) names.push_back(state_name(n, s));
  std::vector<Edge> edges;
  LabelSet alphabet;
  for (std::size_t s = 0; s < g.states.size(); ++s)
    for (std::size_t k = 0; k < g.trans[s].size(); ++k) {
      alphabet.insert(g.trans[s][k].interaction.label);
      edges.push_back(Edge{s, g.trans[s][k].interaction.label, g.targets[s][k]});
    }
  p.automaton = Automaton(std::move(names), 0, std::move(alphabet), std::move(edges));
  p.states = g.states;
  for (const auto& c : n.components()) p.interface.insert(c.labels().begin(), c.labels().end());
  return p;
}

bool shares_component(const Interaction& a, const Interaction& b, std::size_t* which) {
  for (const auto& x : a.steps)
    for (const auto& y : b.steps)
      if (x.component == y.component) {
        if (which) *which = x.component;
        return true;
      }
  return false;
}

}  // namespace

std::vector<Transition> enabled_transitions(const Network& n, const ProductState& s, bool open) {
  if (s.size() != n.size())
    fail(ErrorKind::Contract, "product state has " + std::to_string(s.size()) +
                                  " entries for a network of " + std::to_string(n.size()));
  return Sync(n).enabled(s, open);
}

std::vector<Transition> allowed_transitions(const Network& n, const ProductState& s,
                                            const std::vector<Priority>& priorities) {
  auto ts = enabled_transitions(n, s);
  auto idx = index_priorities(priorities);
  std::vector<Transition> out;
  for (auto k : allowed_indices(ts, idx)) out.push_back(ts[k]);
  return out;
}

Product compose(const Network& n, const ExploreOptions& options) {
  Sync sync(n);
  return build_product(n, explore(sync, false, options.bound, nullptr));
}

Product compose_open(const Network& n, const ExploreOptions& options) {
  Sync sync(n);
  return build_product(n, explore(sync, true, options.bound, nullptr));
}

DeadlockReport find_deadlocks(const Network& n, const std::vector<Priority>& priorities,
                              const ExploreOptions& options) {
  Sync sync(n);
  auto idx = index_priorities(priorities);
  auto g = explore(sync, false, options.bound, priorities.empty() ? nullptr : &idx);
  DeadlockReport report;
  report.total_reachable = g.states.size();
  for (std::size_t s = 0; s < g.states.size(); ++s)
    if (g.trans[s].empty() && sync.active(g.states[s]))
      report.deadlocks.push_back(Deadlock{g.states[s], witness(n, g, s)});
  return report;
}

CompatibilityVerdict check_compatibility(const Automaton& caller, const Automaton& callee,
                                         const CompatOptions& options) {
  Network n({Component{"caller", caller, std::nullopt}, Component{"callee", callee, std::nullopt}});
  Sync sync(n);
  auto g = explore(sync, false, options.bound, nullptr);
  CompatibilityVerdict v;
  v.states_explored = g.states.size();

  std::set<std::string> callee_keys;
  for (const auto& l : callee.alphabet()) callee_keys.insert(l.key());
  const auto out_caller = caller.outgoing();
  const auto out_callee = callee.outgoing();

  for (std::size_t s = 0; s < g.states.size(); ++s) {
    const auto& st = g.states[s];
    std::optional<Label> missing;
    for (auto e : out_caller[st[0]]) {
      const auto& l = caller.edges()[e].label;
      if (l.dir != Direction::Out) continue;
      if (options.restrict_to_callee_alphabet && !callee_keys.contains(l.key())) continue;
      bool matched = false;
      for (auto f : out_callee[st[1]]) {
        const auto& m = callee.edges()[f].label;
        matched = matched || (m.dir == Direction::Inc && m.key() == l.key());
      }
      if (!matched && (!missing || l < *missing)) missing = l;
    }
    if (missing) {
      v.compatible = false;
      v.trace = witness(n, g, s);
      v.unmatched = missing;
      v.detail = "call '" + missing->str() + "' at " + state_name(n, st) +
                 " is not expected by the callee";
      return v;
    }
  }
  return v;
}

SynthesisResult synthesize_priorities(const Network& n, const ExploreOptions& options) {
  Sync sync(n);
  auto g = explore(sync, false, options.bound, nullptr);
  const std::size_t count = g.states.size();
  SynthesisResult result;
  result.states_explored = count;

  std::vector<bool> bad(count, false);
  for (std::size_t s = 0; s < count; ++s) bad[s] = g.trans[s].empty() && sync.active(g.states[s]);

  std::vector<std::vector<std::size_t>> preds(count);
  for (std::size_t s = 0; s < count; ++s)
    for (auto t : g.targets[s]) preds[t].push_back(s);

  while (true) {
    // Attractor: bad states plus states all of whose successors are in it.
    std::vector<bool> attr = bad;
    std::vector<std::size_t> remaining(count);
    std::deque<std::size_t> work;
    for (std::size_t s = 0; s < count; ++s) {
      remaining[s] = g.targets[s].size();
      if (attr[s]) work.push_back(s);
    }
    while (!work.empty()) {
      auto s = work.front();
      work.pop_front();
      for (auto p : preds[s]) {
        if (attr[p]) continue;
        if (--remaining[p] == 0) {
          attr[p] = true;
          work.push_back(p);
        }
      }
    }
    if (attr[0]) {
      result.sat = false;
      result.priorities.clear();
      return result;
    }

    std::set<Priority> chosen;
    PriorityIndex idx;
    bool restart = false;
    bool changed = true;
    while (changed && !restart) {
      changed = false;
      std::vector<bool> seen(count, false);
      std::deque<std::size_t> queue{0};
      seen[0] = true;
      while (!queue.empty() && !restart) {
        auto s = queue.front();
        queue.pop_front();
        auto allowed = allowed_indices(g.trans[s], idx);
        if (allowed.empty()) {
          if (!g.trans[s].empty()) {
            bad[s] = true;
            restart = true;
          }
          continue;
        }
        std::vector<std::size_t> good, doomed;
        for (auto k : allowed) (attr[g.targets[s][k]] ? doomed : good).push_back(k);
        if (!doomed.empty() && good.empty()) {
          bad[s] = true;
          restart = true;
          continue;
        }
        for (auto k : doomed) {
          const auto& lower = g.trans[s][k].interaction;
          std::size_t pick = good.front();
          for (auto h : good)
            if (shares_component(lower, g.trans[s][h].interaction, nullptr)) {
              pick = h;
              break;
            }
          const auto& higher = g.trans[s][pick].interaction;
          std::size_t comp = 0;
          std::string id = shares_component(lower, higher, &comp) ? n[comp].id : std::string();
          chosen.insert(Priority{id, lower, higher});
          idx[lower].push_back(higher);
          changed = true;
        }
        for (auto k : good) {
          auto t = g.targets[s][k];
          if (!seen[t]) {
            seen[t] = true;
            queue.push_back(t);
          }
        }
      }
    }
    if (!restart) {
      result.priorities.assign(chosen.begin(), chosen.end());
      return result;
    }
  }
}

Label select_protocol(const BehavioralType& own, const Automaton& peer, const ExploreOptions& options) {
  std::optional<Automaton> mine;
  for (const auto& a : own.automata)
    for (const auto& l : a.automaton.alphabet())
      if (!mine && l.dir == Direction::Out) mine = a.automaton;
  for (const auto& r : own.regexes)
    for (const auto& l : r.expr.atoms())
      if (!mine && l.dir == Direction::Out) mine = own.resolve(r.name);
  if (!mine)
    fail(ErrorKind::Contract, "type '" + own.id + "' has no automaton describing outgoing calls");

  Network n({Component{"own", *mine, std::nullopt}, Component{"peer", peer, std::nullopt}});
  auto synth = synthesize_priorities(n, options);
  if (!synth.sat) fail(ErrorKind::Incompatible, "no protocol choice avoids a deadlock with the peer");
  ProductState init{mine->initial(), peer.initial()};
  std::optional<Label> best;
  for (const auto& t : allowed_transitions(n, init, synth.priorities)) {
    bool own_calls = false;
    for (const auto& st : t.interaction.steps)
      own_calls = own_calls || (st.component == 0 &&
                                mine->edges()[st.edge].label.dir == Direction::Out);
    if (own_calls && (!best || t.interaction.label < *best)) best = t.interaction.label;
  }
  if (!best) fail(ErrorKind::Incompatible, "no outgoing call of '" + own.id + "' is enabled initially");
  return *best;
}

std::string describe(const Priority& p) {
  return p.lower.label.key() + " < " + p.higher.label.key();
}

std::string describe(const Network& n, const Priority& p) {
  auto side = [&](const Interaction& it) {
    std::string ids;
    for (const auto& st : it.steps) ids += (ids.empty() ? "" : ",") + n[st.component].id;
    return it.label.key() + " (" + ids + ")";
  };
  return side(p.lower) + " < " + side(p.higher);
}

Network parse_network(std::string_view text, const std::filesystem::path& base_dir,
                      const ParseOptions& options) {
  auto root = detail::parse_json(text, "network file");
  detail::Members members{options.strict, nullptr};
  detail::expect_object(root, "");
  members.check(root, "", {"components", "meta"});
  std::vector<Component> comps;
  const auto& list = detail::get_array(root, "components", "");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto at = "/components/" + std::to_string(i);
    detail::expect_object(list[i], at);
    members.check(list[i], at, {"id", "type_file", "automaton_name"});
    Component c;
    c.id = detail::get_string(list[i], "id", at);
    auto file = base_dir / detail::get_string(list[i], "type_file", at);
    std::string which;
    if (list[i].contains("automaton_name")) which = detail::get_string(list[i], "automaton_name", at);
    auto t = load_type(file, options);
    if (!which.empty() && !t.find_automaton(which) && !t.find_regex(which))
      fail(ErrorKind::Parse, at + "/automaton_name: type '" + t.id + "' has no automaton or regex '" +
                                 which + "'");
    c.automaton = t.resolve(which);
    comps.push_back(std::move(c));
  }
  try {
    return Network(std::move(comps));
  } catch (const Error& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

Network load_network(const std::filesystem::path& path, const ParseOptions& options) {
  auto text = read_file(path);
  try {
    return parse_network(text, path.parent_path(), options);
  } catch (const Error& e) {
    fail(e.kind(), path.string() + ": " + e.what());
  }
}

namespace {

json interaction_json(const Network& n, const Interaction& it) {
  json steps = json::array();
  for (const auto& st : it.steps) {
    const auto& a = n[st.component].automaton;
    const auto& e = a.edges()[st.edge];
    steps.push_back(json{{"component", n[st.component].id},
                         {"edge", json::array({a.name(e.src), e.label.str(), a.name(e.dst)})}});
  }
  return json{{"label", it.label.str()}, {"steps", std::move(steps)}};
}

Interaction interaction_from(const Network& n, const json& j, const std::string& at) {
  detail::expect_object(j, at);
  Interaction it;
  try {
    it.label = parse_label(detail::get_string(j, "label", at));
  } catch (const Error& e) {
    fail(ErrorKind::Parse, at + "/label: " + e.what());
  }
  const auto& steps = detail::get_array(j, "steps", at);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto where = at + "/steps/" + std::to_string(k);
    detail::expect_object(steps[k], where);
    auto id = detail::get_string(steps[k], "component", where);
    auto ci = n.index_of(id);
    if (!ci) fail(ErrorKind::Parse, where + "/component: unknown component '" + id + "'");
    auto names = detail::get_strings(steps[k], "edge", where);
    if (names.size() != 3) fail(ErrorKind::Parse, where + "/edge: expected [source, label, target]");
    const auto& a = n[*ci].automaton;
    auto src = a.find(names[0]);
    auto dst = a.find(names[2]);
    Label l;
    try {
      l = parse_label(names[1]);
    } catch (const Error& e) {
      fail(ErrorKind::Parse, where + "/edge/1: " + e.what());
    }
    std::optional<std::size_t> found;
    for (std::size_t e = 0; e < a.edges().size() && src && dst; ++e)
      if (a.edges()[e] == Edge{*src, l, *dst}) found = e;
    if (!found) fail(ErrorKind::Parse, where + "/edge: no such edge in component '" + id + "'");
    it.steps.push_back(Step{*ci, *found});
  }
  std::sort(it.steps.begin(), it.steps.end());
  return it;
}

}  // namespace

std::string serialize_priorities(const Network& n, const std::vector<Priority>& priorities) {
  json list = json::array();
  for (const auto& p : priorities)
    list.push_back(json{{"component", p.component_id},
                        {"lower", interaction_json(n, p.lower)},
                        {"higher", interaction_json(n, p.higher)},
                        {"summary", describe(n, p)}});
  return list.dump(2) + "\n";
}

std::vector<Priority> parse_priorities(const Network& n, std::string_view text) {
  auto root = detail::parse_json(text, "priority file");
  std::string base;
  if (root.is_object()) {
    root = detail::get_array(root, "priorities", "");
    base = "/priorities";
  }
  if (!root.is_array()) fail(ErrorKind::Parse, "/: expected an array of priorities");
  std::vector<Priority> out;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const auto at = base + "/" + std::to_string(i);
    detail::expect_object(root[i], at);
    Priority p;
    if (root[i].contains("component")) p.component_id = detail::get_string(root[i], "component", at);
    p.lower = interaction_from(n, detail::get_member(root[i], "lower", at), at + "/lower");
    p.higher = interaction_from(n, detail::get_member(root[i], "higher", at), at + "/higher");
    if (p.lower == p.higher) fail(ErrorKind::Parse, at + ": lower and higher are the same interaction");
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace beht
