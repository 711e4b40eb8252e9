// Copyright 2026 The crossqasm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crossqasm/library.hpp"

#include <algorithm>

namespace crossqasm {
namespace {

const std::vector<GateDef>& library() {
  static const std::vector<GateDef> defs = [] {
    const auto p = parse(
        "OPENQASM 2.0;\n"
        "include \"qelib1.inc\";\n"
        "gate cs q0,q1 {\n"
        "p(pi/4) q0; cx q0,q1;\n"
        "p(-pi/4) q1; cx q0,q1;\n"
        "p(pi/4) q1; }\n");
    return p.gate_defs;
  }();
  return defs;
}

}  // namespace

const GateDef* custom_gate(std::string_view name) {
  const auto& defs = library();
  auto it = std::find_if(defs.begin(), defs.end(), [&](const GateDef& d) { return d.name == name; });
  return it == defs.end() ? nullptr : &*it;
}

std::vector<std::string> custom_gate_names() {
  std::vector<std::string> out;
  for (const auto& d : library()) out.push_back(d.name);
  return out;
}

}  // namespace crossqasm
