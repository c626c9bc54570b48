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

#ifndef BEHT_BEHT_H
#define BEHT_BEHT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#ifdef BEHT_BUILDING
#define BEHT_API __declspec(dllexport)
#else
#define BEHT_API __declspec(dllimport)
#endif
#else
#define BEHT_API __attribute__((visibility("default")))
#endif

typedef enum beht_status {
  BEHT_OK = 0,
  BEHT_NEGATIVE = 1, /* the check ran and its verdict is negative */
  BEHT_ERR_ARGUMENT = 2,
  BEHT_ERR_CONTRACT = 3,
  BEHT_ERR_PRECONDITION = 4,
  BEHT_ERR_STRUCTURAL = 5,
  BEHT_ERR_PARSE = 6,
  BEHT_ERR_RESOURCE = 7,
  BEHT_ERR_IO = 8,
  BEHT_ERR_INCOMPATIBLE = 9,
  BEHT_ERR_INTERNAL = 10
} beht_status;

typedef struct beht_type beht_type;
typedef struct beht_network beht_network;
typedef struct beht_monitor beht_monitor;
typedef struct beht_registry beht_registry;

BEHT_API const char* beht_version(void);
BEHT_API const char* beht_status_name(beht_status status);
/* Message of the last failing call on this thread; empty when none. */
BEHT_API const char* beht_last_error(void);
/* Warnings collected by the last lenient parse on this thread, one per line. */
BEHT_API const char* beht_last_warnings(void);
/* Releases strings returned through char** out parameters. */
BEHT_API void beht_string_free(char* s);

/* Behavioral types. `strict` rejects unknown JSON members. */
BEHT_API beht_status beht_type_load(const char* path, int strict, beht_type** out);
BEHT_API beht_status beht_type_parse(const char* json, int strict, beht_type** out);
BEHT_API beht_status beht_type_serialize(const beht_type* t, char** out_json);
BEHT_API beht_status beht_type_save(const beht_type* t, const char* path);
BEHT_API void beht_type_free(beht_type* t);

/* Checks. An automaton name of NULL or "" selects the first automaton (or
   regex) of the type. Verdicts come back as JSON. */
BEHT_API beht_status beht_check_equal(const beht_type* a, const char* name_a, const beht_type* b,
                                      const char* name_b, int compare_location_names,
                                      char** out_json);
/* `shared` is a comma-separated label list, NULL for the abstract alphabet;
   `mode` is "tau" or "delete". */
BEHT_API beht_status beht_check_refine(const beht_type* abstract_type, const char* abstract_name,
                                       const beht_type* concrete_type, const char* concrete_name,
                                       const char* shared, const char* mode, char** out_json);
BEHT_API beht_status beht_check_compat(const beht_type* caller, const char* caller_name,
                                       const beht_type* callee, const char* callee_name,
                                       int restrict_to_callee, char** out_json);

/* Networks. A bound of 0 means the default (10^6 product states). */
BEHT_API beht_status beht_network_load(const char* path, int strict, beht_network** out);
BEHT_API void beht_network_free(beht_network* n);
/* `priorities_json` (may be NULL) is the output of beht_priorities or its
   "priorities" array. */
BEHT_API beht_status beht_deadlock(const beht_network* n, const char* priorities_json,
                                   size_t bound, char** out_json);
BEHT_API beht_status beht_priorities(const beht_network* n, size_t bound, char** out_json);
BEHT_API beht_status beht_select_protocol(const beht_type* own, const beht_type* peer,
                                          const char* peer_name, size_t bound, char** out_json);

/* `values` is comma-separated; `scheme` is "per-instance" or "shared". */
BEHT_API beht_status beht_instantiate(const beht_type* spec, const char* param, const char* values,
                                      const char* scheme, beht_type** out);
BEHT_API beht_status beht_canonicalize(const beht_type* t, beht_type** out);

/* Monitors. `mode` is "inc", "out" or "both" (NULL for both). */
BEHT_API beht_status beht_monitor_generate(const beht_type* t, const char* automaton_name,
                                           const char* mode, beht_monitor** out);
BEHT_API beht_status beht_monitor_load(const char* path, int strict, beht_monitor** out);
BEHT_API beht_status beht_monitor_parse(const char* json, int strict, beht_monitor** out);
BEHT_API beht_status beht_monitor_serialize(const beht_monitor* m, char** out_json);
BEHT_API beht_status beht_monitor_save(const beht_monitor* m, const char* path);
BEHT_API beht_status beht_monitor_emit_source(const beht_monitor* m, const char* template_id,
                                              char** out_text);
/* `dispatch` is "singleton" or "per-object"; `constructor` may be NULL. */
BEHT_API beht_status beht_monitor_run(const beht_monitor* m, const char* trace_path,
                                      const char* dispatch, int latch, const char* constructor,
                                      int strict, char** out_json);
BEHT_API beht_status beht_monitor_run_text(const beht_monitor* m, const char* trace_jsonl,
                                           const char* dispatch, int latch,
                                           const char* constructor, int strict, char** out_json);
BEHT_API void beht_monitor_free(beht_monitor* m);

/* Registry. */
BEHT_API beht_status beht_registry_create(beht_registry** out);
BEHT_API beht_status beht_registry_load(const char* dir, beht_registry** out);
BEHT_API beht_status beht_registry_save(const beht_registry* r, const char* dir);
/* `interfaces` is comma-separated and may be NULL. */
BEHT_API beht_status beht_registry_register(beht_registry* r, const char* component_id,
                                            const char* interfaces, const beht_type* const* types,
                                            size_t count);
BEHT_API beht_status beht_registry_unregister(beht_registry* r, const char* component_id);
BEHT_API beht_status beht_registry_describe(const beht_registry* r, char** out_json);
/* `relation` is "equal", "refines" or "compatible"; `role` is "caller" or
   "callee". BEHT_NEGATIVE when nothing matches. */
BEHT_API beht_status beht_registry_discover(const beht_registry* r, const beht_type* required,
                                            const char* required_name, const char* relation,
                                            const char* role, char** out_json);
BEHT_API void beht_registry_free(beht_registry* r);

#ifdef __cplusplus
}
#endif

#endif
