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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <string>

#include "beht/composition.hpp"
#include "beht/monitor.hpp"
#include "beht/params.hpp"
#include "beht/pipeline.hpp"
#include "beht/registry.hpp"
#include "beht/trace_io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string fx = BEHT_FIXTURES;

struct Run {
  int code = -1;
  std::string out;
  json j() const { return json::parse(out); }
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(BEHT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string f(const std::string& rel) { return fx + "/" + rel; }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "beht_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

const std::vector<std::string> kTypes = {
    "protocol/client.bt.json",      "protocol/client_new_only.bt.json", "protocol/client_old_only.bt.json",
    "protocol/server_new.bt.json",  "protocol/server_old.bt.json",      "protocol/server_handshake.bt.json",
    "booking/middleware.bt.json",   "booking/flightdb.bt.json",         "booking/flightdb_no_cancel.bt.json",
    "filelock/lock.bt.json",        "speed/simple.bt.json",             "speed/modes.bt.json"};

const std::vector<std::string> kNets = {"protocol/pair.net.json", "protocol/pair_old.net.json",
                                        "filelock/locks_per_instance.net.json",
                                        "filelock/locks_shared.net.json", "booking/seats.net.json"};

}  // namespace

TEST_CASE("check equal agrees with the library") {
  CHECK(run("check equal " + f("protocol/client.bt.json") + " " + f("protocol/client.bt.json")).code == 0);
  for (const auto& a : kTypes)
    for (const auto& b : kTypes) {
      CAPTURE(a);
      CAPTURE(b);
      auto r = run("check equal " + f(a) + " " + f(b));
      const bool lib = beht::check_equal(beht::load_type(f(a)).resolve(), beht::load_type(f(b)).resolve()).equal;
      REQUIRE(r.code == (lib ? 0 : 1));
      CHECK(r.j()["verdict"] == (lib ? "equal" : "not_equal"));
    }
}

TEST_CASE("check compat agrees with the library") {
  for (const auto& a : kTypes)
    for (const auto& b : kTypes) {
      CAPTURE(a);
      CAPTURE(b);
      auto r = run("check compat --caller " + f(a) + " --callee " + f(b));
      const bool lib =
          beht::check_compatibility(beht::load_type(f(a)).resolve(), beht::load_type(f(b)).resolve()).compatible;
      CHECK(r.code == (lib ? 0 : 1));
    }
  auto bad = run("check compat --caller " + f("booking/middleware.bt.json") + " --callee " +
                 f("booking/flightdb_no_cancel.bt.json"));
  CHECK(bad.j()["counterexample"]["method"] == "cancelReservation");
}

TEST_CASE("check refine") {
  auto r = run("check refine --abstract " + f("speed/simple.bt.json") + " --concrete " + f("speed/modes.bt.json") +
               " --shared brake,acceleration --mode tau");
  CHECK(r.code == 0);
  auto back = run("check refine --abstract " + f("speed/modes.bt.json") + " --concrete " + f("speed/simple.bt.json") +
                  " --shared brake,acceleration");
  CHECK(back.code == 0);
  auto strict = run("check refine --abstract " + f("speed/simple.bt.json") + " --concrete " +
                    f("speed/modes.bt.json"));
  const auto simple = beht::load_type(f("speed/simple.bt.json")).resolve();
  const bool lib =
      beht::check_refines(beht::load_type(f("speed/modes.bt.json")).resolve(), simple, simple.alphabet()).equal;
  CHECK(strict.code == (lib ? 0 : 1));
}

TEST_CASE("deadlock agrees with the library") {
  for (const auto& n : kNets) {
    CAPTURE(n);
    auto r = run("deadlock " + f(n));
    auto rep = beht::find_deadlocks(beht::load_network(f(n)));
    CHECK(r.code == (rep.deadlocks.empty() ? 0 : 1));
    CHECK(r.j()["deadlocks"].size() == rep.deadlocks.size());
    CHECK(r.j()["states_explored"] == rep.total_reachable);
  }
  CHECK(run("deadlock " + f("filelock/locks_per_instance.net.json") + " --bound 4").code == 2);
}

TEST_CASE("priorities and select-protocol") {
  auto r = run("priorities " + f("protocol/pair.net.json"));
  REQUIRE(r.code == 0);
  auto j = r.j();
  REQUIRE(j["priorities"].size() == 1);
  CHECK(j["priorities"][0]["summary"].get<std::string>().find("oldPrtcl") == 0);
  auto out = scratch("locks.prio.json");
  REQUIRE(run("priorities " + f("filelock/locks_per_instance.net.json") + " -o " + out.string()).code == 0);
  CHECK(run("deadlock " + f("filelock/locks_per_instance.net.json") + " --priorities " + out.string()).code == 0);

  auto s = run("select-protocol --own " + f("protocol/client.bt.json") + " --peer " + f("protocol/server_new.bt.json"));
  CHECK(s.code == 0);
  CHECK(s.j()["label"] == "OUT:newPrtcl");
  auto o = run("select-protocol --own " + f("protocol/client.bt.json") + " --peer " + f("protocol/server_old.bt.json"));
  CHECK(o.j()["label"] == "OUT:oldPrtcl");
  CHECK(run("select-protocol --own " + f("protocol/client_new_only.bt.json") + " --peer " +
            f("protocol/server_old.bt.json"))
            .code == 2);
}

TEST_CASE("instantiate and canonicalize write library output") {
  auto out = scratch("file_inst.bt.json");
  REQUIRE(run("instantiate " + f("filelock/file_template.bt.json") + " --param F=F1,F2 --scheme shared -o " +
              out.string())
              .code == 0);
  auto lib = beht::instantiate(beht::load_type(f("filelock/file_template.bt.json")), "F", {"F1", "F2"},
                               beht::Scheme::Shared);
  CHECK(beht::read_file(out) == beht::serialize_type(lib));
  auto canon = scratch("canon.bt.json");
  REQUIRE(run("canonicalize " + out.string() + " -o " + canon.string()).code == 0);
  auto again = scratch("canon2.bt.json");
  REQUIRE(run("canonicalize " + canon.string() + " -o " + again.string()).code == 0);
  CHECK(beht::read_file(canon) == beht::read_file(again));
  CHECK(run("instantiate " + f("filelock/file_template.bt.json") + " --param F=a,a --scheme shared -o " +
            out.string())
            .code == 2);
}

TEST_CASE("monitor gen and run") {
  auto mon = scratch("lock.mon.json");
  auto src = scratch("lock_mon.java");
  REQUIRE(run("monitor gen " + f("filelock/lock.bt.json") + " --automaton protocol -o " + mon.string() +
              " --emit-source " + src.string() + " --template fig10")
              .code == 0);
  CHECK(beht::read_file(src).find("nextState") != std::string::npos);
  auto bad = run("monitor run " + mon.string() + " " + f("traces/read_before_lock.jsonl"));
  CHECK(bad.code == 1);
  std::istringstream lines(bad.out);
  std::string first;
  std::getline(lines, first);
  auto v = json::parse(first);
  CHECK(v["kind"] == "PROTOCOL");
  CHECK(v["method"] == "Read");
  const auto lock = beht::load_type(f("filelock/lock.bt.json")).resolve("protocol");
  CHECK_FALSE(beht::accepts(lock, std::vector<beht::Label>{beht::parse_label("INC:Read")}));
  CHECK(run("monitor run " + mon.string() + " " + f("traces/lock_read_unlock.jsonl")).code == 0);

  auto ci = scratch("ci.mon.json");
  REQUIRE(run("monitor gen " + f("booking/client_instance.bt.json") + " -o " + ci.string()).code == 0);
  CHECK(run("monitor run " + ci.string() + " " + f("traces/list_900ms.jsonl")).code == 0);
  CHECK(run("monitor run " + ci.string() + " " + f("traces/list_1500ms.jsonl")).code == 1);
  CHECK(run("monitor run " + ci.string() + " " + f("traces/two_objects.jsonl") + " --dispatch per-object").code == 0);
  CHECK(run("monitor run " + ci.string() + " " + f("traces/two_objects.jsonl")).code == 1);
}

TEST_CASE("registry commands") {
  auto r = run("registry load " + f("registry"));
  REQUIRE(r.code == 0);
  CHECK(r.j()["size"] == 4);
  auto reg = beht::Registry::load(f("registry"));
  for (const auto& need : kTypes)
    for (const char* rel : {"equal", "refines", "compatible"})
      for (const char* role : {"caller", "callee"}) {
        CAPTURE(need);
        CAPTURE(rel);
        auto d = run("registry discover --dir " + f("registry") + " --need " + f(need) + " --relation " + rel +
                     " --role " + role);
        auto lib = reg.discover(beht::load_type(f(need)).resolve(), *beht::relation_from_string(rel),
                                *beht::role_from_string(role));
        REQUIRE(d.code == (lib.empty() ? 1 : 0));
        auto ms = d.j()["matches"];
        REQUIRE(ms.size() == lib.size());
        for (std::size_t i = 0; i < lib.size(); ++i) {
          CHECK(ms[i]["component_id"] == lib[i].component_id);
          CHECK(ms[i]["model"] == lib[i].model);
        }
      }
}

TEST_CASE("errors exit with 2") {
  CHECK(run("check equal /nonexistent.bt.json " + f("protocol/client.bt.json")).code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("deadlock").code == 2);
  CHECK(run("check refine --abstract " + f("speed/simple.bt.json") + " --concrete " + f("speed/modes.bt.json") +
            " --mode sideways")
            .code == 2);
  CHECK(run("--help").code == 0);
}
