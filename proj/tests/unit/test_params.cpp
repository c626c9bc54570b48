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

#include <doctest.h>

#include "beht/error.hpp"
#include "beht/params.hpp"
#include "beht/pipeline.hpp"
#include "beht/trace_io.hpp"
#include "oracles.hpp"

using namespace beht;

namespace {

Label L(const char* s) { return parse_label(s); }

NamedAutomaton file_template() {
  return load_type(BEHT_FIXTURES "/filelock/file_template.bt.json").automata.at(0);
}

LabelSet labels_not_ending(const Automaton& a, const std::string& suffix) {
  LabelSet out;
  for (const auto& l : a.alphabet())
    if (!l.name.ends_with(suffix)) out.insert(l);
  return out;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("label substitution") {
  CHECK(substitute(L("OUT:Lock<F>"), {{"F", "F1"}}) == L("OUT:LockF1"));
  CHECK(substitute(L("OUT:Lock"), {}) == L("OUT:Lock"));
  CHECK(kind_of([] { substitute(L("OUT:Lock<F>"), {}); }) == ErrorKind::Contract);
}

TEST_CASE("regex substitution suffixes every atom") {
  auto r = parse_regex("((INC:Lock<F>).(INC:Read<F>+INC:Write<F>)*.(INC:Unlock<F>))*");
  CHECK(parameters(r) == std::set<std::string>{"F"});
  auto s = substitute(r, {{"F", "f0"}});
  CHECK(s.atoms() == LabelSet{L("INC:Lockf0"), L("INC:Readf0"), L("INC:Writef0"), L("INC:Unlockf0")});
  CHECK(parameters(s).empty());
  auto plain = parse_regex("a.b");
  CHECK(substitute(plain, {{"F", "x"}}) == plain);
}

TEST_CASE("substitute renames parameterized locations") {
  auto t = file_template();
  auto s = substitute(t, {{"F", "F1"}});
  CHECK(s.automaton.find("lock_F1"));
  CHECK(s.automaton.find("unlocked"));
  CHECK(s.param_locations.empty());
  CHECK(s.automaton.alphabet().contains(L("INC:LockF1")));
}

TEST_CASE("per-instance instantiation") {
  auto t = file_template();
  auto p = instantiate_per_instance(t, "F", {"f0", "f1"});
  const auto& a = p.automaton;
  CHECK(a.size() == 3);
  auto hub = a.find("unlocked");
  auto l0 = a.find("lock_f0");
  auto l1 = a.find("lock_f1");
  REQUIRE(hub);
  REQUIRE(l0);
  REQUIRE(l1);
  CHECK(std::find(a.edges().begin(), a.edges().end(), Edge{*hub, L("INC:Lockf0"), *l0}) != a.edges().end());
  CHECK(std::find(a.edges().begin(), a.edges().end(), Edge{*hub, L("INC:Lockf1"), *l1}) != a.edges().end());
  CHECK(a.is_deterministic());

  auto single = instantiate_per_instance(t, "F", {"f0"});
  CHECK(single == substitute(t, {{"F", "f0"}}));

  auto three = instantiate_per_instance(t, "F", {"a", "b", "c"});
  CHECK(three.automaton.size() == t.automaton.size() + 2 * t.param_locations.size());
  CHECK(three.automaton.edges().size() == 3 * t.automaton.edges().size());

  CHECK(kind_of([&] { instantiate_per_instance(t, "F", {"f0", "f0"}); }) == ErrorKind::Contract);
  CHECK(kind_of([&] { instantiate_per_instance(t, "F", {}); }) == ErrorKind::Contract);
}

TEST_CASE("shared instantiation") {
  auto t = file_template();
  auto s = instantiate_shared(t, "F", {"f0", "f1"});
  const auto& a = s.automaton;
  CHECK(a.size() == 2);
  auto lock = a.find("lock");
  REQUIRE(lock);
  int entering = 0;
  for (const auto& e : a.edges())
    if (e.dst == *lock && e.label.name.starts_with("Lock")) ++entering;
  CHECK(entering == 2);

  auto single = instantiate_shared(t, "F", {"f0"});
  CHECK(check_equal(single.automaton, substitute(t, {{"F", "f0"}}).automaton).equal);

  auto small = Automaton::from_names({"p", "q"}, "p",
                                     {{"p", "INC:go<F>", "q"}, {"q", "INC:back", "p"}, {"q", "INC:stay<F>", "q"}});
  NamedAutomaton tmpl{"small", small, {}};
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<std::string> values;
    for (std::size_t i = 0; i < k; ++i) values.push_back("v" + std::to_string(i));
    CHECK(instantiate_shared(tmpl, "F", values).automaton.edges().size() == 3 + (k - 1) * 2);
  }
  CHECK(kind_of([&] { instantiate_shared(t, "F", {"x", "x"}); }) == ErrorKind::Contract);
}

TEST_CASE("instances project back to the substitution") {
  auto t = file_template();
  for (auto scheme : {Scheme::PerInstance, Scheme::Shared}) {
    CAPTURE(to_string(scheme));
    auto inst = scheme == Scheme::PerInstance ? instantiate_per_instance(t, "F", {"F1", "F2", "F3"})
                                              : instantiate_shared(t, "F", {"F1", "F2", "F3"});
    for (const std::string v : {"F1", "F2", "F3"}) {
      auto projected = hide(inst.automaton, labels_not_ending(inst.automaton, v), HideMode::Delete);
      CHECK(check_equal(projected, substitute(t, {{"F", v}}).automaton).equal);
    }
  }
}

TEST_CASE("type-level instantiation") {
  auto t = load_type(BEHT_FIXTURES "/filelock/file_template.bt.json");
  auto one = instantiate(t, "F", {"F1"}, Scheme::PerInstance);
  REQUIRE(one.regexes.size() == 1);
  CHECK(parameters(one).empty());
  CHECK(one.regexes[0].expr.atoms().contains(L("INC:LockF1")));
  auto two = instantiate(t, "F", {"F1", "F2"}, Scheme::Shared);
  CHECK(two.regexes.empty());
  CHECK(two.automata.size() == 2);
  CHECK(parameters(two).empty());
  CHECK_NOTHROW(two.validate());
}

TEST_CASE("template-generated fixtures match instantiation") {
  auto t = load_type(BEHT_FIXTURES "/filelock/file_template.bt.json");
  auto f1 = load_type(BEHT_FIXTURES "/filelock/file_F1_per_instance.bt.json");
  CHECK(check_equal(f1.resolve("file"), instantiate(t, "F", {"F1"}, Scheme::PerInstance).resolve("file")).equal);
  auto f2 = load_type(BEHT_FIXTURES "/filelock/file_F2_shared.bt.json");
  CHECK(check_equal(f2.resolve("file"), instantiate(t, "F", {"F2"}, Scheme::Shared).resolve("file")).equal);
}

TEST_CASE("property: random templates instantiate consistently") {
  oracle::Rng rng(31);
  std::vector<Label> pool{make_label(Direction::Inc, "a", "F"), make_label(Direction::Inc, "b", "F"),
                          make_label(Direction::Inc, "c"), make_label(Direction::Out, "d")};
  for (int i = 0; i < 200; ++i) {
    auto a = oracle::random_automaton(rng, pool, 4);
    NamedAutomaton tmpl{"m", a, {}};
    for (std::size_t l = 1; l < a.size(); ++l)
      if (oracle::pick(rng, 2)) tmpl.param_locations.insert(a.name(l));
    for (auto scheme : {Scheme::PerInstance, Scheme::Shared}) {
      auto inst = scheme == Scheme::PerInstance ? instantiate_per_instance(tmpl, "F", {"x", "y"})
                                                : instantiate_shared(tmpl, "F", {"x", "y"});
      CHECK(parameters(inst).empty());
      for (const auto& l : inst.automaton.alphabet()) {
        bool used = false;
        for (const auto& e : inst.automaton.edges()) used = used || e.label == l;
        CHECK(used);
      }
    }
  }
}
