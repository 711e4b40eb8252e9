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

#include "crossqasm/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "crossqasm/library.hpp"

namespace crossqasm {

std::vector<GateKind> GenConfig::default_gate_pool() {
  std::vector<GateKind> pool;
  for (const auto& g : all_gates()) {
    if (g.kind != GateKind::Barrier) pool.push_back(g.kind);
  }
  return pool;
}

void validate_config(const GenConfig& config) {
  if (config.num_qubits == 0) throw std::invalid_argument("num_qubits must be positive");
  if (config.gate_pool.empty() && config.custom_gates.empty()) {
    throw std::invalid_argument("gate pool is empty");
  }
  for (auto k : config.gate_pool) {
    const auto& info = gate_info(k);
    if (k == GateKind::Barrier) throw std::invalid_argument("barrier cannot be in the gate pool");
    if (info.num_qubits > config.num_qubits) {
      throw std::invalid_argument("'" + std::string(info.name) + "' needs more qubits than num_qubits");
    }
  }
  for (const auto& name : config.custom_gates) {
    const auto* def = custom_gate(name);
    if (!def) throw std::invalid_argument("unknown library gate '" + name + "'");
    if (def->args.size() > config.num_qubits) {
      throw std::invalid_argument("'" + name + "' needs more qubits than num_qubits");
    }
  }
  if (!(config.mode_mix >= 0.0 && config.mode_mix <= 1.0)) {
    throw std::invalid_argument("mode_mix must lie in [0, 1]");
  }
}

namespace {

/// One drawn statement: either a builtin kind or a library gate.
struct Draw {
  std::optional<GateKind> kind;
  const GateDef* def = nullptr;
  std::vector<double> multipliers;
  std::vector<std::size_t> qubits;
};

Draw draw_statement(const GenConfig& config, Rng& rng) {
  const std::size_t choices = config.gate_pool.size() + config.custom_gates.size();
  const std::size_t pick = rng.index(choices);
  Draw d;
  std::size_t arity, params;
  if (pick < config.gate_pool.size()) {
    d.kind = config.gate_pool[pick];
    arity = gate_info(*d.kind).num_qubits;
    params = gate_info(*d.kind).num_params;
  } else {
    d.def = custom_gate(config.custom_gates[pick - config.gate_pool.size()]);
    arity = d.def->args.size();
    params = d.def->params.size();
  }
  for (std::size_t i = 0; i < params; ++i) d.multipliers.push_back(2.0 * rng.uniform01());
  // Partial Fisher-Yates: operands without replacement.
  std::vector<std::size_t> pool(config.num_qubits);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < arity; ++i) {
    const std::size_t j = i + rng.index(pool.size() - i);
    std::swap(pool[i], pool[j]);
    d.qubits.push_back(pool[i]);
  }
  return d;
}

Rng program_rng(const GenConfig& config, std::size_t stream_index) {
  return Rng(derive_seed(config.seed, stream_index, "program"));
}

}  // namespace

GenMode choose_mode(const GenConfig& config, std::size_t stream_index) {
  Rng rng(derive_seed(config.seed, stream_index, "mode"));
  return rng.bernoulli(config.mode_mix) ? GenMode::Direct : GenMode::Representation;
}

GeneratedProgram generate_direct(const GenConfig& config, std::size_t stream_index) {
  validate_config(config);
  Rng rng = program_rng(config, stream_index);
  QasmProgram p;
  p.qregs.push_back({"q", config.num_qubits});
  if (config.include_creg) p.cregs.push_back({"c", config.num_qubits});
  for (std::size_t i = 0; i < config.num_gates; ++i) {
    Draw d = draw_statement(config, rng);
    QasmStatement st;
    if (d.kind) {
      st.gate_name = std::string(gate_name(*d.kind));
    } else {
      st.gate_name = d.def->name;
      if (!p.find_gate_def(d.def->name)) p.gate_defs.push_back(*d.def);
    }
    for (double m : d.multipliers) st.params.push_back(ParamExpr::pi_multiple(m));
    for (auto q : d.qubits) st.qubit_operands.push_back({"q", q});
    p.statements.push_back(std::move(st));
  }
  GeneratedProgram g;
  g.qasm = print(p);
  g.mode = GenMode::Direct;
  g.seed = config.seed;
  g.stream_index = stream_index;
  return g;
}

Circuit random_circuit(const GenConfig& config, Rng& rng) {
  Circuit c;
  c.num_qubits = config.num_qubits;
  c.qregs.push_back({"q", config.num_qubits});
  if (config.include_creg) c.cregs.push_back({"c", config.num_qubits});
  for (std::size_t i = 0; i < config.num_gates; ++i) {
    Draw d = draw_statement(config, rng);
    if (d.kind) {
      GateApp op;
      op.kind = *d.kind;
      for (double m : d.multipliers) op.params.push_back(ParamExpr::pi_multiple(m).value());
      op.qubits = d.qubits;
      c.ops.push_back(std::move(op));
      continue;
    }
    auto it = std::find(c.gate_defs.begin(), c.gate_defs.end(), *d.def);
    if (it == c.gate_defs.end()) {
      c.gate_defs.push_back(*d.def);
      it = c.gate_defs.end() - 1;
    }
    CompositeInstance inst;
    inst.def_index = static_cast<std::size_t>(it - c.gate_defs.begin());
    std::vector<double> values;
    for (double m : d.multipliers) {
      inst.params.push_back(ParamExpr::pi_multiple(m));
      values.push_back(inst.params.back().value());
    }
    inst.qubits = d.qubits;
    const std::size_t tag = c.composites.size();
    c.composites.push_back(inst);
    for (auto& op : inline_gate_def(*d.def, values, d.qubits)) {
      op.composite = tag;
      c.ops.push_back(std::move(op));
    }
  }
  return c;
}

std::string representation_source(const GenConfig& config, std::size_t stream_index) {
  validate_config(config);
  Rng rng = program_rng(config, stream_index);
  return print(raise(random_circuit(config, rng)));
}

std::string export_source(const std::string& source_qasm, Adapter& adapter) {
  const Circuit c = lower(parse(source_qasm));
  try {
    return adapter.export_circuit(c);
  } catch (const AdapterFailure& e) {
    AdapterFailure f("generate-export", e.message(), e.location());
    f.set_diagnostics(e.diagnostics());
    throw f;
  }
}

GeneratedProgram generate_via_representation(const GenConfig& config, Adapter& adapter,
                                             std::size_t stream_index) {
  GeneratedProgram g;
  g.mode = GenMode::Representation;
  g.seed = config.seed;
  g.stream_index = stream_index;
  g.adapter_used = adapter.id();
  g.source_qasm = representation_source(config, stream_index);
  g.qasm = export_source(*g.source_qasm, adapter);
  return g;
}

}  // namespace crossqasm
