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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beht/beht.h"
#include "json.hpp"

namespace {

using nlohmann::json;

int exit_code(beht_status s) {
  if (s == BEHT_OK) return 0;
  if (s == BEHT_NEGATIVE) return 1;
  return 2;
}

int report_error(beht_status s) {
  std::cerr << "error (" << beht_status_name(s) << "): " << beht_last_error() << "\n";
  return 2;
}

void print_warnings() {
  std::string w = beht_last_warnings();
  if (!w.empty()) std::cerr << w;
}

struct Owned {
  char* s = nullptr;
  ~Owned() { beht_string_free(s); }
};

/// Prints the JSON result of a check and maps its status onto the exit code.
int finish(beht_status s, char*& out) {
  Owned o{out};
  if (s != BEHT_OK && s != BEHT_NEGATIVE) return report_error(s);
  std::cout << o.s;
  return exit_code(s);
}

struct Type {
  beht_type* t = nullptr;
  ~Type() { beht_type_free(t); }
};

bool load(const std::string& path, bool strict, Type& out, int& code) {
  beht_status s = beht_type_load(path.c_str(), strict ? 1 : 0, &out.t);
  if (s != BEHT_OK) {
    code = report_error(s);
    return false;
  }
  print_warnings();
  return true;
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int saved(const std::string& what, const std::string& path) {
  std::cout << json{{"verdict", "ok"}, {"wrote", what}, {"output", path}}.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behavioral type checker: equivalence, refinement, compatibility, deadlocks, "
               "priorities, monitors and a component registry.\n"
               "Exit codes: 0 positive verdict, 1 negative verdict, 2 usage, parse or resource error."};
  app.require_subcommand(1);
  bool lenient = false;
  app.add_flag("--lenient", lenient, "Warn about unknown JSON members instead of rejecting them");
  int code = 0;
  auto strict = [&] { return !lenient; };

  // check
  auto* check = app.add_subcommand("check", "Pairwise checks");
  check->require_subcommand(1);

  auto* eq = check->add_subcommand("equal", "Trace-language equality of two types");
  std::string eq_a, eq_b, eq_name, eq_name_b;
  bool eq_names = false;
  eq->add_option("A", eq_a, "First .bt.json")->required();
  eq->add_option("B", eq_b, "Second .bt.json")->required();
  eq->add_option("--automaton", eq_name, "Automaton or regex name (both sides)");
  eq->add_option("--automaton-b", eq_name_b, "Automaton or regex name for B (defaults to --automaton)");
  eq->add_flag("--compare-location-names", eq_names, "Also require equal minimized location names");
  eq->callback([&] {
    Type a, b;
    if (!load(eq_a, strict(), a, code) || !load(eq_b, strict(), b, code)) return;
    char* out = nullptr;
    const std::string nb = eq_name_b.empty() ? eq_name : eq_name_b;
    code = finish(beht_check_equal(a.t, opt(eq_name), b.t, opt(nb), eq_names, &out), out);
  });

  auto* ref = check->add_subcommand("refine", "Concrete refines abstract over a shared alphabet");
  std::string ref_a, ref_c, ref_an, ref_cn, ref_shared, ref_mode = "tau";
  ref->add_option("--abstract", ref_a, "Abstract .bt.json")->required();
  ref->add_option("--concrete", ref_c, "Concrete .bt.json")->required();
  ref->add_option("--abstract-automaton", ref_an, "Automaton name in the abstract type");
  ref->add_option("--concrete-automaton", ref_cn, "Automaton name in the concrete type");
  ref->add_option("--shared", ref_shared, "Comma-separated shared labels (default: abstract alphabet)");
  ref->add_option("--mode", ref_mode, "Hiding mode")->check(CLI::IsMember({"tau", "delete"}))->capture_default_str();
  ref->callback([&] {
    Type a, c;
    if (!load(ref_a, strict(), a, code) || !load(ref_c, strict(), c, code)) return;
    char* out = nullptr;
    code = finish(beht_check_refine(a.t, opt(ref_an), c.t, opt(ref_cn), opt(ref_shared),
                                    ref_mode.c_str(), &out),
                  out);
  });

  auto* compat = check->add_subcommand("compat", "Every call of the caller is expected by the callee");
  std::string cp_caller, cp_callee, cp_cn, cp_ln;
  bool cp_restrict = false;
  compat->add_option("--caller", cp_caller, "Caller .bt.json")->required();
  compat->add_option("--callee", cp_callee, "Callee .bt.json")->required();
  compat->add_option("--caller-automaton", cp_cn, "Automaton name in the caller type");
  compat->add_option("--callee-automaton", cp_ln, "Automaton name in the callee type");
  compat->add_flag("--restrict-to-callee", cp_restrict, "Only check calls named in the callee's alphabet");
  compat->callback([&] {
    Type a, b;
    if (!load(cp_caller, strict(), a, code) || !load(cp_callee, strict(), b, code)) return;
    char* out = nullptr;
    code = finish(beht_check_compat(a.t, opt(cp_cn), b.t, opt(cp_ln), cp_restrict, &out), out);
  });

  // deadlock / priorities / select-protocol
  auto network = [&](const std::string& path, beht_network** n) {
    beht_status s = beht_network_load(path.c_str(), strict(), n);
    if (s != BEHT_OK) code = report_error(s);
    return s == BEHT_OK;
  };

  auto* dl = app.add_subcommand("deadlock", "Reachable deadlocks of a network");
  std::string dl_net, dl_prio;
  std::size_t dl_bound = 1000000;
  dl->add_option("NET", dl_net, ".net.json")->required();
  dl->add_option("--bound", dl_bound, "Maximal number of product states")->capture_default_str();
  dl->add_option("--priorities", dl_prio, "Priorities to apply (output of `priorities`)");
  dl->callback([&] {
    beht_network* n = nullptr;
    if (!network(dl_net, &n)) return;
    std::string prio_text;
    if (!dl_prio.empty()) {
      std::ifstream in(dl_prio);
      if (!in) {
        std::cerr << "error (io): cannot open '" << dl_prio << "'\n";
        code = 2;
        beht_network_free(n);
        return;
      }
      prio_text.assign(std::istreambuf_iterator<char>(in), {});
    }
    char* out = nullptr;
    code = finish(beht_deadlock(n, dl_prio.empty() ? nullptr : prio_text.c_str(), dl_bound, &out), out);
    beht_network_free(n);
  });

  auto* pr = app.add_subcommand("priorities", "Synthesize priorities that remove every deadlock");
  std::string pr_net, pr_out;
  std::size_t pr_bound = 1000000;
  pr->add_option("NET", pr_net, ".net.json")->required();
  pr->add_option("--bound", pr_bound, "Maximal number of product states")->capture_default_str();
  pr->add_option("-o,--output", pr_out, "Also write the result to this file");
  pr->callback([&] {
    beht_network* n = nullptr;
    if (!network(pr_net, &n)) return;
    char* out = nullptr;
    beht_status s = beht_priorities(n, pr_bound, &out);
    if (!pr_out.empty() && (s == BEHT_OK || s == BEHT_NEGATIVE)) {
      std::ofstream f(pr_out);
      f << out;
    }
    code = finish(s, out);
    beht_network_free(n);
  });

  auto* sp = app.add_subcommand("select-protocol", "Choose the first call that keeps the pair deadlock-free");
  std::string sp_own, sp_peer, sp_peer_name;
  sp->add_option("--own", sp_own, "Own .bt.json (describing outgoing calls)")->required();
  sp->add_option("--peer", sp_peer, "Peer .bt.json")->required();
  sp->add_option("--peer-automaton", sp_peer_name, "Automaton name in the peer type");
  sp->callback([&] {
    Type a, b;
    if (!load(sp_own, strict(), a, code) || !load(sp_peer, strict(), b, code)) return;
    char* out = nullptr;
    code = finish(beht_select_protocol(a.t, b.t, opt(sp_peer_name), 0, &out), out);
  });

  // instantiate / canonicalize
  auto* inst = app.add_subcommand("instantiate", "Instantiate a parameterized type");
  std::string in_spec, in_param, in_scheme = "per-instance", in_out;
  inst->add_option("SPEC", in_spec, "Parameterized .bt.json")->required();
  inst->add_option("--param", in_param, "Binding, e.g. F=f0,f1")->required();
  inst->add_option("--scheme", in_scheme, "Instantiation scheme")
      ->check(CLI::IsMember({"per-instance", "shared"}))
      ->capture_default_str();
  inst->add_option("-o,--output", in_out, "Output .bt.json")->required();
  inst->callback([&] {
    auto eq_pos = in_param.find('=');
    if (eq_pos == std::string::npos || eq_pos == 0) {
      std::cerr << "error (argument): --param expects NAME=v1,v2,...\n";
      code = 2;
      return;
    }
    Type spec, result;
    if (!load(in_spec, strict(), spec, code)) return;
    const std::string name = in_param.substr(0, eq_pos);
    const std::string values = in_param.substr(eq_pos + 1);
    beht_status s = beht_instantiate(spec.t, name.c_str(), values.c_str(), in_scheme.c_str(), &result.t);
    if (s == BEHT_OK) s = beht_type_save(result.t, in_out.c_str());
    code = s == BEHT_OK ? saved("type", in_out) : report_error(s);
  });

  auto* canon = app.add_subcommand("canonicalize", "Complete, determinize, minimize and normalize every automaton");
  std::string cn_in, cn_out;
  canon->add_option("FILE", cn_in, ".bt.json")->required();
  canon->add_option("-o,--output", cn_out, "Output .bt.json")->required();
  canon->callback([&] {
    Type t, result;
    if (!load(cn_in, strict(), t, code)) return;
    beht_status s = beht_canonicalize(t.t, &result.t);
    if (s == BEHT_OK) s = beht_type_save(result.t, cn_out.c_str());
    code = s == BEHT_OK ? saved("type", cn_out) : report_error(s);
  });

  // monitor
  auto* mon = app.add_subcommand("monitor", "Generate and run monitors");
  mon->require_subcommand(1);
  auto* gen = mon->add_subcommand("gen", "Generate a monitor descriptor from a type");
  std::string g_type, g_name, g_out, g_src, g_tpl = "java", g_mode = "both";
  gen->add_option("TYPE", g_type, ".bt.json")->required();
  gen->add_option("--automaton", g_name, "Automaton or regex name");
  gen->add_option("-o,--output", g_out, "Output .mon.json")->required();
  gen->add_option("--emit-source", g_src, "Also write monitor source code to this path");
  gen->add_option("--template", g_tpl, "Source template")->capture_default_str();
  gen->add_option("--mode", g_mode, "Edge directions to monitor")
      ->check(CLI::IsMember({"inc", "out", "both"}))
      ->capture_default_str();
  gen->callback([&] {
    Type t;
    if (!load(g_type, strict(), t, code)) return;
    beht_monitor* m = nullptr;
    beht_status s = beht_monitor_generate(t.t, opt(g_name), g_mode.c_str(), &m);
    if (s == BEHT_OK) s = beht_monitor_save(m, g_out.c_str());
    if (s == BEHT_OK && !g_src.empty()) {
      char* text = nullptr;
      s = beht_monitor_emit_source(m, g_tpl.c_str(), &text);
      if (s == BEHT_OK) {
        std::ofstream f(g_src);
        f << text;
        if (!f) {
          std::cerr << "error (io): cannot write '" << g_src << "'\n";
          beht_string_free(text);
          beht_monitor_free(m);
          code = 2;
          return;
        }
      }
      beht_string_free(text);
    }
    beht_monitor_free(m);
    code = s == BEHT_OK ? saved("monitor", g_out) : report_error(s);
  });

  auto* run = mon->add_subcommand("run", "Replay a trace through a monitor");
  std::string r_mon, r_trace, r_dispatch = "singleton", r_ctor;
  bool r_no_latch = false;
  run->add_option("MONITOR", r_mon, ".mon.json")->required();
  run->add_option("TRACE", r_trace, ".jsonl trace")->required();
  run->add_option("--dispatch", r_dispatch, "Monitor instances")
      ->check(CLI::IsMember({"singleton", "per-object"}))
      ->capture_default_str();
  run->add_flag("--no-latch", r_no_latch, "Keep checking after the first violation");
  run->add_option("--constructor", r_ctor, "Event creating a per-object monitor");
  run->callback([&] {
    beht_monitor* m = nullptr;
    beht_status s = beht_monitor_load(r_mon.c_str(), strict(), &m);
    if (s != BEHT_OK) {
      code = report_error(s);
      return;
    }
    char* out = nullptr;
    s = beht_monitor_run(m, r_trace.c_str(), r_dispatch.c_str(), r_no_latch ? 0 : 1, opt(r_ctor),
                         strict(), &out);
    beht_monitor_free(m);
    Owned o{out};
    if (s != BEHT_OK && s != BEHT_NEGATIVE) {
      code = report_error(s);
      return;
    }
    auto result = json::parse(o.s);
    for (const auto& v : result["violations"]) std::cout << v.dump() << "\n";
    for (const auto& w : result["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
    json summary = result;
    summary.erase("violations");
    summary.erase("warnings");
    summary["violation_count"] = result["violations"].size();
    std::cout << summary.dump() << "\n";
    code = exit_code(s);
  });

  // registry
  auto* reg = app.add_subcommand("registry", "Component registry");
  reg->require_subcommand(1);
  auto* rload = reg->add_subcommand("load", "Load a registry directory and describe it");
  std::string rl_dir;
  rload->add_option("DIR", rl_dir, "Registry directory")->required();
  rload->callback([&] {
    beht_registry* r = nullptr;
    beht_status s = beht_registry_load(rl_dir.c_str(), &r);
    if (s != BEHT_OK) {
      code = report_error(s);
      return;
    }
    char* out = nullptr;
    code = finish(beht_registry_describe(r, &out), out);
    beht_registry_free(r);
  });

  auto* disc = reg->add_subcommand("discover", "Find registered components by behavioral relation");
  std::string d_dir = ".", d_need, d_name, d_rel, d_role = "caller";
  disc->add_option("--dir", d_dir, "Registry directory")->capture_default_str();
  disc->add_option("--need", d_need, "Required behavior .bt.json")->required();
  disc->add_option("--automaton", d_name, "Automaton name in the required type");
  disc->add_option("--relation", d_rel, "Relation to test")
      ->required()
      ->check(CLI::IsMember({"equal", "refines", "compatible"}));
  disc->add_option("--role", d_role, "Side the required behavior plays for compatible")
      ->check(CLI::IsMember({"caller", "callee"}))
      ->capture_default_str();
  disc->callback([&] {
    Type need;
    if (!load(d_need, strict(), need, code)) return;
    beht_registry* r = nullptr;
    beht_status s = beht_registry_load(d_dir.c_str(), &r);
    if (s != BEHT_OK) {
      code = report_error(s);
      return;
    }
    char* out = nullptr;
    code = finish(beht_registry_discover(r, need.t, opt(d_name), d_rel.c_str(), d_role.c_str(), &out), out);
    beht_registry_free(r);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return code;
}
