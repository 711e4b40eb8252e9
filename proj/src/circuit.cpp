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

#include "crossqasm/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace crossqasm {

std::pair<std::string, std::size_t> Circuit::source_register(std::size_t flat) const {
  std::size_t base = 0;
  for (const auto& r : qregs) {
    if (flat < base + r.size) return {r.name, flat - base};
    base += r.size;
  }
  return {"q", flat};
}

Circuit Circuit::with_ops(std::vector<GateApp> new_ops) const {
  Circuit c;
  c.num_qubits = num_qubits;
  c.qregs = qregs;
  c.cregs = cregs;
  c.gate_defs = gate_defs;
  c.composites = composites;
  c.ops = std::move(new_ops);
  return c;
}

void check_gate_app(const GateApp& op, std::size_t num_qubits) {
  const auto& info = gate_info(op.kind);
  if (op.params.size() != info.num_params) {
    throw LoweringError("'" + std::string(info.name) + "' has wrong parameter count");
  }
  if (info.num_qubits != 0 && op.qubits.size() != info.num_qubits) {
    throw LoweringError("'" + std::string(info.name) + "' has wrong arity");
  }
  for (std::size_t i = 0; i < op.qubits.size(); ++i) {
    if (op.qubits[i] >= num_qubits) throw LoweringError("qubit index out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (op.qubits[i] == op.qubits[j]) throw LoweringError("repeated qubit operand");
    }
  }
}

std::vector<GateApp> inline_gate_def(const GateDef& def, const std::vector<double>& params,
                                     const std::vector<std::size_t>& qubits) {
  if (params.size() != def.params.size() || qubits.size() != def.args.size()) {
    throw LoweringError("'" + def.name + "' called with wrong signature");
  }
  std::map<std::string, double, std::less<>> bindings;
  for (std::size_t i = 0; i < params.size(); ++i) bindings[def.params[i]] = params[i];
  std::map<std::string, std::size_t, std::less<>> arg_map;
  for (std::size_t i = 0; i < qubits.size(); ++i) arg_map[def.args[i]] = qubits[i];

  std::vector<GateApp> out;
  for (const auto& b : def.body) {
    const auto kind = lookup_gate(b.gate_name);
    if (!kind) throw LoweringError("'" + b.gate_name + "' is not a builtin gate");
    if (*kind == GateKind::Barrier) continue;
    GateApp op;
    op.kind = *kind;
    for (const auto& e : b.params) {
      try {
        op.params.push_back(e.eval(bindings));
      } catch (const std::out_of_range& ex) {
        throw LoweringError(ex.what());
      }
    }
    for (const auto& a : b.args) {
      auto it = arg_map.find(a);
      if (it == arg_map.end()) throw LoweringError("'" + a + "' is not an argument of '" + def.name + "'");
      op.qubits.push_back(it->second);
    }
    out.push_back(std::move(op));
  }
  return out;
}

Circuit lower(const QasmProgram& program) {
  Circuit c;
  c.qregs = program.qregs;
  c.cregs = program.cregs;
  c.gate_defs = program.gate_defs;
  std::map<std::string, std::size_t, std::less<>> offsets;
  for (const auto& r : program.qregs) {
    if (!offsets.emplace(r.name, c.num_qubits).second) {
      throw LoweringError("duplicate register '" + r.name + "'");
    }
    c.num_qubits += r.size;
  }

  const bool builtins = program.has_builtins();
  for (const auto& st : program.statements) {
    std::vector<std::size_t> qubits;
    for (const auto& o : st.qubit_operands) {
      auto it = offsets.find(o.reg);
      if (it == offsets.end()) throw LoweringError("'" + o.reg + "' is not a quantum register");
      qubits.push_back(it->second + o.index);
    }
    std::vector<double> params;
    for (const auto& p : st.params) params.push_back(p.value());

    if (auto kind = builtins ? lookup_gate(st.gate_name) : std::nullopt) {
      if (*kind == GateKind::Barrier) continue;
      GateApp op{*kind, std::move(params), std::move(qubits), std::nullopt};
      check_gate_app(op, c.num_qubits);
      c.ops.push_back(std::move(op));
      continue;
    }
    auto def = std::find_if(program.gate_defs.begin(), program.gate_defs.end(),
                            [&](const GateDef& d) { return d.name == st.gate_name; });
    if (def == program.gate_defs.end()) {
      throw LoweringError("'" + st.gate_name + "' is not defined in this scope");
    }
    auto body = inline_gate_def(*def, params, qubits);
    const std::size_t instance = c.composites.size();
    c.composites.push_back({static_cast<std::size_t>(def - program.gate_defs.begin()),
                            st.params, qubits});
    for (auto& op : body) {
      check_gate_app(op, c.num_qubits);
      op.composite = instance;
      c.ops.push_back(std::move(op));
    }
  }
  return c;
}

namespace {

QasmStatement statement_for(const Circuit& c, const GateApp& op) {
  QasmStatement st;
  st.gate_name = std::string(gate_name(op.kind));
  for (double p : op.params) st.params.push_back(ParamExpr::from_value(p));
  for (auto q : op.qubits) {
    auto [reg, idx] = c.source_register(q);
    st.qubit_operands.push_back({reg, idx});
  }
  return st;
}

}  // namespace

QasmProgram raise(const Circuit& circuit) {
  QasmProgram p;
  if (circuit.qregs.empty()) {
    if (circuit.num_qubits > 0) p.qregs.push_back({"q", circuit.num_qubits});
  } else {
    p.qregs = circuit.qregs;
  }
  p.cregs = circuit.cregs;

  // A composite folds back only if its ops are contiguous, complete and
  // identical to a fresh inlining of its definition.
  std::vector<bool> foldable(circuit.composites.size(), false);
  std::vector<std::size_t> first(circuit.composites.size(), circuit.ops.size());
  for (std::size_t k = 0; k < circuit.composites.size(); ++k) {
    const auto& inst = circuit.composites[k];
    if (inst.def_index >= circuit.gate_defs.size()) continue;
    std::vector<double> params;
    for (const auto& e : inst.params) params.push_back(e.value());
    std::vector<GateApp> expected;
    try {
      expected = inline_gate_def(circuit.gate_defs[inst.def_index], params, inst.qubits);
    } catch (const LoweringError&) {
      continue;
    }
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
      if (circuit.ops[i].composite == k) positions.push_back(i);
    }
    if (positions.size() != expected.size() || positions.empty()) continue;
    bool ok = true;
    for (std::size_t j = 0; j < positions.size() && ok; ++j) {
      ok = positions[j] == positions[0] + j && circuit.ops[positions[j]].same_gate(expected[j]);
    }
    if (ok) {
      foldable[k] = true;
      first[k] = positions[0];
    }
  }

  std::set<std::size_t> used_defs;
  for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
    const auto& op = circuit.ops[i];
    if (op.composite && *op.composite < foldable.size() && foldable[*op.composite]) {
      const std::size_t k = *op.composite;
      if (first[k] != i) continue;
      const auto& inst = circuit.composites[k];
      QasmStatement st;
      st.gate_name = circuit.gate_defs[inst.def_index].name;
      st.params = inst.params;
      for (auto q : inst.qubits) {
        auto [reg, idx] = circuit.source_register(q);
        st.qubit_operands.push_back({reg, idx});
      }
      used_defs.insert(inst.def_index);
      p.statements.push_back(std::move(st));
      continue;
    }
    p.statements.push_back(statement_for(circuit, op));
  }
  for (auto d : used_defs) p.gate_defs.push_back(circuit.gate_defs[d]);
  return p;
}

std::size_t gate_count(const Circuit& circuit) {
  return static_cast<std::size_t>(std::count_if(
      circuit.ops.begin(), circuit.ops.end(),
      [](const GateApp& op) { return op.kind != GateKind::Barrier; }));
}

std::size_t unique_gate_count(const Circuit& circuit) {
  std::set<GateKind> kinds;
  for (const auto& op : circuit.ops) {
    if (op.kind != GateKind::Barrier) kinds.insert(op.kind);
  }
  return kinds.size();
}

// ---------------------------------------------------------------------------
// Unitary

Unitary Unitary::identity(std::size_t num_qubits) {
  Unitary u;
  u.num_qubits = num_qubits;
  u.dim = std::size_t{1} << num_qubits;
  u.entries.assign(u.dim * u.dim, 0.0);
  for (std::size_t i = 0; i < u.dim; ++i) u.at(i, i) = 1.0;
  return u;
}

void Unitary::apply(const GateApp& op) {
  if (op.kind == GateKind::Barrier || op.kind == GateKind::Id) return;
  check_gate_app(op, num_qubits);
  const auto g = gate_matrix(op.kind, op.params);
  const std::size_t k = op.qubits.size();
  const std::size_t local = std::size_t{1} << k;

  std::vector<std::size_t> offsets(local, 0);
  std::size_t mask = 0;
  for (std::size_t b = 0; b < local; ++b) {
    for (std::size_t j = 0; j < k; ++j) {
      if (b & (std::size_t{1} << j)) offsets[b] |= std::size_t{1} << op.qubits[j];
    }
  }
  for (auto q : op.qubits) mask |= std::size_t{1} << q;

  std::vector<Complex> in(local), out(local);
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (std::size_t col = 0; col < dim; ++col) {
      for (std::size_t b = 0; b < local; ++b) in[b] = at(base | offsets[b], col);
      for (std::size_t r = 0; r < local; ++r) {
        Complex acc = 0.0;
        for (std::size_t b = 0; b < local; ++b) acc += g[r * local + b] * in[b];
        out[r] = acc;
      }
      for (std::size_t r = 0; r < local; ++r) at(base | offsets[r], col) = out[r];
    }
  }
}

double Unitary::unitarity_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) acc += at(i, k) * std::conj(at(j, k));
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

Unitary unitary_of(const Circuit& circuit, std::size_t max_qubits) {
  if (circuit.num_qubits > max_qubits) {
    throw TooLarge("circuit has " + std::to_string(circuit.num_qubits) +
                   " qubits, limit is " + std::to_string(max_qubits));
  }
  Unitary u = Unitary::identity(circuit.num_qubits);
  for (const auto& op : circuit.ops) u.apply(op);
  return u;
}

PhaseDistance phase_distance(const Unitary& a, const Unitary& b) {
  if (a.dim != b.dim) throw std::invalid_argument("unitary dimensions differ");
  const std::size_t n = a.dim;
  // Largest-magnitude entry of b^dagger a.
  Complex best = 0.0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(b.at(k, i)) * a.at(k, j);
      const double mag = std::abs(acc);
      if (mag > best_mag) {
        best_mag = mag;
        best = acc;
      }
    }
  }
  PhaseDistance out;
  out.phase = best_mag > 0.0 ? best / best_mag : Complex{1.0, 0.0};
  for (std::size_t i = 0; i < n * n; ++i) {
    out.distance = std::max(out.distance, std::abs(a.entries[i] - out.phase * b.entries[i]));
  }
  return out;
}

}  // namespace crossqasm
