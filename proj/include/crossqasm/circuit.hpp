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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crossqasm/gates.hpp"
#include "crossqasm/qasm.hpp"

namespace crossqasm {

/// One gate application over flat qubit indices.
struct GateApp {
  GateKind kind = GateKind::Id;
  std::vector<double> params;
  std::vector<std::size_t> qubits;
  /// Index into Circuit::composites when this op is part of an inlined,
  /// still-intact custom gate application.
  std::optional<std::size_t> composite;

  /// Ignores the composite tag.
  bool same_gate(const GateApp& other) const {
    return kind == other.kind && params == other.params && qubits == other.qubits;
  }
  friend bool operator==(const GateApp&, const GateApp&) = default;
};

/// Record of a custom gate application that was inlined on lowering, so the
/// exporter can fold it back into a named call if the ops survive untouched.
struct CompositeInstance {
  std::size_t def_index = 0;
  std::vector<ParamExpr> params;
  std::vector<std::size_t> qubits;
  friend bool operator==(const CompositeInstance&, const CompositeInstance&) = default;
};

/// Platform-level circuit. Flat index 0 is the least significant qubit of
/// the unitary; quantum registers are concatenated in declaration order.
struct Circuit {
  std::size_t num_qubits = 0;
  std::vector<GateApp> ops;
  std::vector<Register> qregs;
  std::vector<Register> cregs;
  std::vector<GateDef> gate_defs;
  std::vector<CompositeInstance> composites;

  /// Flat index -> (register name, index within register).
  std::pair<std::string, std::size_t> source_register(std::size_t flat) const;

  /// Copy of everything but the ops.
  Circuit with_ops(std::vector<GateApp> new_ops) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

class LoweringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inlines gate definitions, flattens registers and drops barriers.
Circuit lower(const QasmProgram& program);

/// Builtin-only statements, except intact composites which are re-emitted
/// as named calls together with their definitions.
QasmProgram raise(const Circuit& circuit);

/// Expands one custom-gate call into builtin ops over flat qubits.
std::vector<GateApp> inline_gate_def(const GateDef& def, const std::vector<double>& params,
                                     const std::vector<std::size_t>& qubits);

/// Validates arity, parameter count and distinct in-range qubits.
void check_gate_app(const GateApp& op, std::size_t num_qubits);

std::size_t gate_count(const Circuit& circuit);
std::size_t unique_gate_count(const Circuit& circuit);

/// Dense unitary, row-major, qubit 0 least significant.
struct Unitary {
  std::size_t num_qubits = 0;
  std::size_t dim = 1;
  std::vector<Complex> entries;

  static Unitary identity(std::size_t num_qubits);
  Complex& at(std::size_t row, std::size_t col) { return entries[row * dim + col]; }
  const Complex& at(std::size_t row, std::size_t col) const { return entries[row * dim + col]; }

  /// Left-multiplies by `op` embedded at its qubits.
  void apply(const GateApp& op);
  /// max |(U U^dagger - I)_{ij}|.
  double unitarity_error() const;
};

inline constexpr std::size_t kDefaultUnitaryQubitLimit = 8;

Unitary unitary_of(const Circuit& circuit, std::size_t max_qubits = kDefaultUnitaryQubitLimit);

/// Max-norm distance after removing the best global phase (the phase of the
/// largest-magnitude entry of b^dagger a). Requires equal dimensions.
struct PhaseDistance {
  double distance = 0.0;
  Complex phase{1.0, 0.0};
};
PhaseDistance phase_distance(const Unitary& a, const Unitary& b);

}  // namespace crossqasm
