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

#include "beht/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "beht/error.hpp"

namespace beht {

namespace {

// Glushkov construction state for one subexpression.
struct Positions {
  bool nullable = true;
  std::vector<std::size_t> first;
  std::vector<std::size_t> last;
};

class Glushkov {
 public:
  Positions visit(const Regex& r) {
    switch (r.kind) {
      case Regex::Kind::Epsilon: return {};
      case Regex::Kind::Atom: {
        std::size_t p = labels_.size() + 1;
        labels_.push_back(r.atom);
        follow_.emplace_back();
        return Positions{false, {p}, {p}};
      }
      case Regex::Kind::Star: {
        Positions c = visit(r.children[0]);
        link(c.last, c.first);
        c.nullable = true;
        return c;
      }
      case Regex::Kind::Alt: {
        Positions out{false, {}, {}};
        for (const auto& child : r.children) {
          Positions c = visit(child);
          out.nullable = out.nullable || c.nullable;
          out.first.insert(out.first.end(), c.first.begin(), c.first.end());
          out.last.insert(out.last.end(), c.last.begin(), c.last.end());
        }
        return out;
      }
      case Regex::Kind::Concat: {
        Positions acc = visit(r.children[0]);
        for (std::size_t i = 1; i < r.children.size(); ++i) {
          Positions c = visit(r.children[i]);
          link(acc.last, c.first);
          if (acc.nullable) acc.first.insert(acc.first.end(), c.first.begin(), c.first.end());
          if (c.nullable) {
            acc.last.insert(acc.last.end(), c.last.begin(), c.last.end());
          } else {
            acc.last = c.last;
          }
          acc.nullable = acc.nullable && c.nullable;
        }
        return acc;
      }
    }
    return {};
  }

  Automaton build(const Positions& root) const {
    std::vector<LocationId> names{"q0"};
    for (std::size_t p = 1; p <= labels_.size(); ++p) names.push_back("q" + std::to_string(p));
    std::vector<Edge> edges;
    for (auto p : root.first) edges.push_back(Edge{0, labels_[p - 1], p});
    for (std::size_t p = 1; p <= labels_.size(); ++p)
      for (auto q : follow_[p - 1]) edges.push_back(Edge{p, labels_[q - 1], q});
    LabelSet alphabet(labels_.begin(), labels_.end());
    return Automaton(std::move(names), 0, std::move(alphabet), std::move(edges));
  }

 private:
  void link(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    for (auto p : from) follow_[p - 1].insert(to.begin(), to.end());
  }

  std::vector<Label> labels_;
  std::vector<std::set<std::size_t>> follow_;
};

LabelSet used_labels(const std::vector<Edge>& edges) {
  LabelSet out;
  for (const auto& e : edges) out.insert(e.label);
  return out;
}

std::string fresh_name(const std::vector<LocationId>& taken, const std::string& base) {
  std::unordered_set<std::string> names(taken.begin(), taken.end());
  if (!names.contains(base)) return base;
  for (int i = 1;; ++i) {
    auto candidate = base + "_" + std::to_string(i);
    if (!names.contains(candidate)) return candidate;
  }
}

// Deterministic transition table over a sorted label vector; -1 = missing.
struct Table {
  std::vector<Label> labels;
  std::vector<std::vector<long>> next;  // [location][label index]
};

Table table_of(const Automaton& a) {
  Table t;
  t.labels.assign(a.alphabet().begin(), a.alphabet().end());
  t.next.assign(a.size(), std::vector<long>(t.labels.size(), -1));
  for (const auto& e : a.edges()) {
    auto li = static_cast<std::size_t>(
        std::lower_bound(t.labels.begin(), t.labels.end(), e.label) - t.labels.begin());
    t.next[e.src][li] = static_cast<long>(e.dst);
  }
  return t;
}

long step(const Automaton& a, const Table& t, long state, const Label& l) {
  auto it = std::lower_bound(t.labels.begin(), t.labels.end(), l);
  if (it == t.labels.end() || *it != l) return a.error_location() ? static_cast<long>(*a.error_location()) : -1;
  return t.next[static_cast<std::size_t>(state)][static_cast<std::size_t>(it - t.labels.begin())];
}

struct Normalized {
  Automaton automaton;
  std::vector<std::size_t> order;  // new index -> old index
};

Normalized normalize_impl(const Automaton& a) {
  auto out = a.outgoing();
  for (auto& v : out) {
    std::sort(v.begin(), v.end(), [&](std::size_t x, std::size_t y) {
      const auto& ex = a.edges()[x];
      const auto& ey = a.edges()[y];
      if (ex.label != ey.label) return ex.label < ey.label;
      return ex.dst < ey.dst;
    });
  }
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> fresh(a.size(), kUnset);
  std::vector<std::size_t> order;
  std::deque<std::size_t> queue{a.initial()};
  fresh[a.initial()] = 0;
  order.push_back(a.initial());
  while (!queue.empty()) {
    auto l = queue.front();
    queue.pop_front();
    for (auto ei : out[l]) {
      auto d = a.edges()[ei].dst;
      if (fresh[d] == kUnset) {
        fresh[d] = order.size();
        order.push_back(d);
        queue.push_back(d);
      }
    }
  }
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (fresh[l] == kUnset) {
      fresh[l] = order.size();
      order.push_back(l);
    }
  }
  std::vector<LocationId> names(a.size());
  std::size_t counter = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    names[i] = a.is_error(order[i]) ? "err" : "s" + std::to_string(counter++);
  std::vector<Edge> edges;
  edges.reserve(a.edges().size());
  for (const auto& e : a.edges()) edges.push_back(Edge{fresh[e.src], e.label, fresh[e.dst]});
  std::optional<std::size_t> err;
  if (a.error_location()) err = fresh[*a.error_location()];
  return Normalized{Automaton(std::move(names), 0, a.alphabet(), std::move(edges), err),
                    std::move(order)};
}

// Minimized automaton plus the normal form, keeping the minimized names so
// that callers can report location correspondences.
struct Canonical {
  Automaton minimal;
  Normalized normal;
};

Canonical canonical_impl(const Automaton& a, const LabelSet& over) {
  Automaton m = minimize(complete(determinize(complete(a, over)), over));
  Normalized n = normalize_impl(m);
  return Canonical{std::move(m), std::move(n)};
}

// Shortest, lexicographically least word leading the pair of complete DFAs
// into a state accepted by `bad`. Returns the reached pairs when no such
// word exists.
template <typename Bad>
std::optional<std::vector<Label>> product_search(
    const Automaton& x, const Automaton& y, const LabelSet& over, Bad bad,
    std::map<std::size_t, std::size_t>* pairing = nullptr) {
  Table tx = table_of(x);
  Table ty = table_of(y);
  std::vector<Label> labels(over.begin(), over.end());
  using Pair = std::pair<long, long>;
  std::map<Pair, std::pair<Pair, std::size_t>> parent;
  std::deque<Pair> queue;
  Pair start{static_cast<long>(x.initial()), static_cast<long>(y.initial())};
  parent.emplace(start, std::pair{Pair{-1, -1}, 0});
  queue.push_back(start);
  while (!queue.empty()) {
    Pair cur = queue.front();
    queue.pop_front();
    if (bad(cur.first, cur.second)) {
      std::vector<Label> word;
      for (Pair p = cur; p != start;) {
        const auto& [prev, li] = parent.at(p);
        word.push_back(labels[li]);
        p = prev;
      }
      std::reverse(word.begin(), word.end());
      return word;
    }
    if (pairing && cur.first >= 0 && cur.second >= 0)
      pairing->emplace(static_cast<std::size_t>(cur.first), static_cast<std::size_t>(cur.second));
    // Error and missing (-1) states are absorbing.
    bool x_dead = cur.first < 0 || x.is_error(static_cast<std::size_t>(cur.first));
    bool y_dead = cur.second < 0 || y.is_error(static_cast<std::size_t>(cur.second));
    if (x_dead && y_dead) continue;
    for (std::size_t li = 0; li < labels.size(); ++li) {
      Pair nxt{x_dead ? cur.first : step(x, tx, cur.first, labels[li]),
               y_dead ? cur.second : step(y, ty, cur.second, labels[li])};
      if (parent.contains(nxt)) continue;
      parent.emplace(nxt, std::pair{cur, li});
      queue.push_back(nxt);
    }
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(HideMode mode) noexcept {
  return mode == HideMode::Delete ? "delete" : "tau";
}

Automaton regex_to_automaton(const Regex& r) {
  r.validate();
  Glushkov g;
  Positions root = g.visit(r);
  Automaton nfa = g.build(root);
  if (nfa.alphabet().empty()) return Automaton({"s0"}, 0, {}, {});
  return normalize(strip_error(minimize(complete(determinize(nfa)))));
}

Automaton complete(const Automaton& a, const LabelSet& over) {
  LabelSet missing;
  std::set_difference(a.alphabet().begin(), a.alphabet().end(), over.begin(), over.end(),
                      std::inserter(missing, missing.end()));
  if (!missing.empty())
    fail(ErrorKind::Contract, "completion set does not cover the alphabet; uncovered: " +
                                  join_labels(missing));
  if (a.is_total(over)) return a;

  auto locations = a.locations();
  std::size_t err;
  if (a.error_location()) {
    err = *a.error_location();
  } else {
    err = locations.size();
    locations.push_back(fresh_name(locations, "err"));
  }
  std::vector<LabelSet> present(locations.size());
  for (const auto& e : a.edges()) present[e.src].insert(e.label);
  std::vector<Edge> edges = a.edges();
  for (std::size_t l = 0; l < locations.size(); ++l) {
    for (const auto& label : over) {
      if (!present[l].contains(label)) edges.push_back(Edge{l, label, err});
    }
  }
  return Automaton(std::move(locations), a.initial(), over, std::move(edges), err);
}

Automaton determinize(const Automaton& a) {
  using Subset = std::vector<std::size_t>;
  auto out = a.outgoing();
  std::vector<Label> labels(a.alphabet().begin(), a.alphabet().end());

  std::map<Subset, std::size_t> index;
  std::vector<Subset> subsets;
  std::vector<Edge> edges;
  std::optional<std::size_t> err;

  auto error_state = [&]() {
    if (!err) {
      err = subsets.size();
      subsets.push_back({});  // placeholder, named below
      index.emplace(Subset{static_cast<std::size_t>(-1)}, *err);
    }
    return *err;
  };
  auto intern = [&](Subset s) {
    auto [it, inserted] = index.emplace(s, subsets.size());
    if (inserted) subsets.push_back(std::move(s));
    return it->second;
  };

  Subset start;
  if (!a.is_error(a.initial())) start.push_back(a.initial());
  if (start.empty()) {
    error_state();
  } else {
    intern(start);
  }
  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    if (err && cur == *err) continue;
    for (const auto& label : labels) {
      std::set<std::size_t> targets;
      bool to_error = false;
      for (auto s : subsets[cur]) {
        for (auto ei : out[s]) {
          const auto& e = a.edges()[ei];
          if (e.label != label) continue;
          if (a.is_error(e.dst)) {
            to_error = true;
          } else {
            targets.insert(e.dst);
          }
        }
      }
      if (!targets.empty()) {
        auto dst = intern(Subset(targets.begin(), targets.end()));
        edges.push_back(Edge{cur, label, dst});
      } else if (to_error) {
        edges.push_back(Edge{cur, label, error_state()});
      }
    }
  }

  std::vector<LocationId> names(subsets.size());
  std::unordered_set<std::string> taken;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (err && i == *err) continue;
    const auto& s = subsets[i];
    std::string n;
    if (s.size() == 1) {
      n = a.name(s[0]);
    } else {
      n = "{";
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) n += ",";
        n += a.name(s[k]);
      }
      n += "}";
    }
    while (!taken.insert(n).second) n += "'";
    names[i] = std::move(n);
  }
  if (err) {
    std::string n = a.error_location() ? a.name(*a.error_location()) : "err";
    while (!taken.insert(n).second) n += "'";
    names[*err] = std::move(n);
    for (const auto& label : used_labels(edges)) edges.push_back(Edge{*err, label, *err});
  }
  LabelSet alphabet = used_labels(edges);
  return Automaton(std::move(names), 0, std::move(alphabet), std::move(edges), err);
}

Automaton minimize(const Automaton& a) {
  {
    std::map<std::pair<std::size_t, Label>, std::size_t> count;
    for (const auto& e : a.edges()) ++count[{e.src, e.label}];
    for (const auto& [key, n] : count) {
      if (n > 1)
        fail(ErrorKind::Precondition, "minimize: location '" + a.name(key.first) +
                                          "' has " + std::to_string(n) + " edges labelled '" +
                                          key.second.str() + "'");
    }
    for (std::size_t l = 0; l < a.size(); ++l) {
      for (const auto& label : a.alphabet()) {
        if (!count.contains({l, label}))
          fail(ErrorKind::Precondition, "minimize: location '" + a.name(l) +
                                            "' has no edge labelled '" + label.str() + "'");
      }
    }
  }
  Table t = table_of(a);
  auto live = a.reachable();
  std::vector<std::size_t> members;
  for (std::size_t l = 0; l < a.size(); ++l)
    if (live[l]) members.push_back(l);

  // Moore refinement, seeded with {error} versus the rest.
  std::vector<std::size_t> block(a.size(), 0);
  for (auto l : members) block[l] = a.is_error(l) ? 1 : 0;
  std::size_t blocks = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> signature;
    std::vector<std::size_t> next(a.size(), 0);
    for (auto l : members) {
      std::vector<std::size_t> sig{block[l]};
      for (auto d : t.next[l]) sig.push_back(block[static_cast<std::size_t>(d)]);
      auto [it, inserted] = signature.emplace(std::move(sig), signature.size());
      next[l] = it->second;
    }
    bool stable = signature.size() == blocks;
    blocks = signature.size();
    block = std::move(next);
    if (stable) break;
  }

  // Blocks ordered by their first member.
  std::map<std::size_t, std::size_t> renumber;
  std::vector<std::size_t> representative;
  for (auto l : members) {
    if (renumber.emplace(block[l], representative.size()).second) representative.push_back(l);
  }
  std::vector<LocationId> names;
  for (auto r : representative) names.push_back(a.name(r));
  std::vector<Edge> edges;
  for (std::size_t b = 0; b < representative.size(); ++b) {
    auto r = representative[b];
    for (std::size_t li = 0; li < t.labels.size(); ++li) {
      auto d = static_cast<std::size_t>(t.next[r][li]);
      edges.push_back(Edge{b, t.labels[li], renumber.at(block[d])});
    }
  }
  std::optional<std::size_t> err;
  if (a.error_location() && live[*a.error_location()])
    err = renumber.at(block[*a.error_location()]);
  return Automaton(std::move(names), renumber.at(block[a.initial()]), a.alphabet(),
                   std::move(edges), err);
}

Automaton normalize(const Automaton& a) { return normalize_impl(a).automaton; }

Automaton strip_error(const Automaton& a) {
  if (!a.error_location()) return a;
  auto err = *a.error_location();
  if (a.initial() == err) return Automaton({a.name(err)}, 0, {}, {});
  std::vector<LocationId> names;
  std::vector<std::size_t> fresh(a.size());
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (l == err) continue;
    fresh[l] = names.size();
    names.push_back(a.name(l));
  }
  std::vector<Edge> edges;
  for (const auto& e : a.edges())
    if (e.src != err && e.dst != err) edges.push_back(Edge{fresh[e.src], e.label, fresh[e.dst]});
  LabelSet alphabet = used_labels(edges);
  return Automaton(std::move(names), fresh[a.initial()], std::move(alphabet), std::move(edges));
}

Automaton hide(const Automaton& a, const LabelSet& drop, HideMode mode) {
  LabelSet unknown;
  std::set_difference(drop.begin(), drop.end(), a.alphabet().begin(), a.alphabet().end(),
                      std::inserter(unknown, unknown.end()));
  if (!unknown.empty())
    fail(ErrorKind::Contract, "hide: labels not in the alphabet: " + join_labels(unknown));
  if (drop.empty()) return a;

  std::vector<Edge> edges;
  if (mode == HideMode::Delete) {
    for (const auto& e : a.edges())
      if (!drop.contains(e.label)) edges.push_back(e);
  } else {
    auto out = a.outgoing();
    for (std::size_t l = 0; l < a.size(); ++l) {
      // Internal closure of l; silent steps into the error location are
      // never taken.
      std::vector<bool> seen(a.size(), false);
      std::vector<std::size_t> stack{l};
      seen[l] = true;
      while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        for (auto ei : out[cur]) {
          const auto& e = a.edges()[ei];
          if (drop.contains(e.label)) {
            if (!seen[e.dst] && !a.is_error(e.dst)) {
              seen[e.dst] = true;
              stack.push_back(e.dst);
            }
          } else {
            edges.push_back(Edge{l, e.label, e.dst});
          }
        }
      }
    }
  }
  LabelSet alphabet = used_labels(edges);
  return Automaton(a.locations(), a.initial(), std::move(alphabet), std::move(edges),
                   a.error_location());
}

EqualityVerdict check_equal(const Automaton& a, const Automaton& b, bool compare_location_names,
                            const std::optional<LabelSet>& universe) {
  LabelSet over;
  if (universe) {
    over = *universe;
  } else {
    over = a.alphabet();
    over.insert(b.alphabet().begin(), b.alphabet().end());
  }
  Canonical ca = canonical_impl(a, over);
  Canonical cb = canonical_impl(b, over);

  EqualityVerdict v;
  if (ca.normal.automaton == cb.normal.automaton) {
    std::map<LocationId, LocationId> mapping;
    for (std::size_t i = 0; i < ca.normal.order.size(); ++i)
      mapping.emplace(ca.minimal.name(ca.normal.order[i]), cb.minimal.name(cb.normal.order[i]));
    if (compare_location_names) {
      for (const auto& [x, y] : mapping) {
        if (x != y) {
          v.detail = "languages agree but location '" + x + "' corresponds to '" + y + "'";
          return v;
        }
      }
    }
    v.equal = true;
    v.location_mapping = std::move(mapping);
    return v;
  }
  const auto& na = ca.normal.automaton;
  const auto& nb = cb.normal.automaton;
  v.counterexample = product_search(na, nb, over, [&](long p, long q) {
    return na.is_error(static_cast<std::size_t>(p)) != nb.is_error(static_cast<std::size_t>(q));
  });
  if (!v.counterexample) v.detail = "normal forms differ";
  return v;
}

EqualityVerdict check_refines(const Automaton& concrete, const Automaton& abstract,
                              const LabelSet& shared, HideMode mode) {
  LabelSet outside;
  std::set_difference(shared.begin(), shared.end(), abstract.alphabet().begin(),
                      abstract.alphabet().end(), std::inserter(outside, outside.end()));
  if (!outside.empty())
    fail(ErrorKind::Contract, "refinement: shared labels missing from the abstract alphabet: " +
                                  join_labels(outside));
  auto hidden = [&](const Automaton& x) {
    LabelSet drop;
    std::set_difference(x.alphabet().begin(), x.alphabet().end(), shared.begin(), shared.end(),
                        std::inserter(drop, drop.end()));
    return hide(x, drop, mode);
  };
  Automaton hc = hidden(concrete);
  Automaton ha = hidden(abstract);
  LabelSet over = hc.alphabet();
  over.insert(ha.alphabet().begin(), ha.alphabet().end());
  Automaton dc = complete(determinize(complete(hc, over)), over);
  Automaton da = complete(determinize(complete(ha, over)), over);

  EqualityVerdict v;
  std::map<std::size_t, std::size_t> pairing;
  v.counterexample = product_search(
      dc, da, over,
      [&](long p, long q) {
        return !dc.is_error(static_cast<std::size_t>(p)) && da.is_error(static_cast<std::size_t>(q));
      },
      &pairing);
  if (!v.counterexample) {
    v.equal = true;
    std::map<LocationId, LocationId> mapping;
    for (const auto& [p, q] : pairing)
      if (!dc.is_error(p)) mapping.emplace(dc.name(p), da.name(q));
    v.location_mapping = std::move(mapping);
  }
  return v;
}

bool accepts(const Automaton& a, std::span<const Label> word) {
  auto out = a.outgoing();
  if (a.is_error(a.initial())) return false;
  std::set<std::size_t> cur{a.initial()};
  for (const auto& label : word) {
    std::set<std::size_t> next;
    for (auto s : cur)
      for (auto ei : out[s]) {
        const auto& e = a.edges()[ei];
        if (e.label == label && !a.is_error(e.dst)) next.insert(e.dst);
      }
    if (next.empty()) return false;
    cur = std::move(next);
  }
  return true;
}

Automaton canonicalize(const Automaton& a, const std::optional<LabelSet>& over) {
  return canonical_impl(a, over ? *over : a.alphabet()).normal.automaton;
}

}  // namespace beht
