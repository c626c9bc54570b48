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

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "beht/behavioral_type.hpp"

namespace beht {

/// Parameter name -> instance id.
using Binding = std::map<std::string, std::string>;

enum class Scheme { PerInstance, Shared };

const char* to_string(Scheme scheme) noexcept;

std::set<std::string> parameters(const Regex& r);
std::set<std::string> parameters(const NamedAutomaton& a);
std::set<std::string> parameters(const BehavioralType& t);

/// `Lock<F>` with F=F1 becomes `LockF1`. Labels without a parameter are
/// returned as is. Throws Error(Contract) when the parameter is unbound.
Label substitute(const Label& l, const Binding& binding);
Regex substitute(const Regex& r, const Binding& binding);
/// Labels are substituted and each parameterized location `x` is renamed
/// `x_v` (values of several parameters are joined with `_` in parameter
/// order).
NamedAutomaton substitute(const NamedAutomaton& a, const Binding& binding);
BehavioralType substitute(const BehavioralType& t, const Binding& binding);

/// Each value gets its own copy of every parameterized location and of every
/// edge that touches one or carries a `<param>` label. Edges between a
/// parameterized and a plain location keep the plain endpoint shared.
NamedAutomaton instantiate_per_instance(const NamedAutomaton& a, const std::string& param,
                                        const std::vector<std::string>& values);

/// Locations stay as they are; each `<param>` edge is replicated once per
/// value between its original endpoints.
NamedAutomaton instantiate_shared(const NamedAutomaton& a, const std::string& param,
                                  const std::vector<std::string>& values);

/// Applies the scheme to every automaton of the type. Regexes are
/// substituted when a single value is given and otherwise converted to
/// automata first.
BehavioralType instantiate(const BehavioralType& t, const std::string& param,
                           const std::vector<std::string>& values, Scheme scheme);

}  // namespace beht
