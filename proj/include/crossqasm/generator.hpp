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
#include <string>
#include <vector>

#include "crossqasm/adapter.hpp"
#include "crossqasm/circuit.hpp"
#include "crossqasm/rng.hpp"

namespace crossqasm {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t num_qubits = 11;
  std::size_t num_gates = 15;
  /// Builtins to draw from; defaults to every builtin except barrier.
  std::vector<GateKind> gate_pool = default_gate_pool();
  /// Library gates (see library.hpp) drawn alongside the builtins; the
  /// program then carries their definitions.
  std::vector<std::string> custom_gates{"cs"};
  /// Probability that a program is generated directly as QASM.
  double mode_mix = 0.5;
  bool include_creg = true;

  static std::vector<GateKind> default_gate_pool();
};

/// Throws std::invalid_argument naming the broken rule.
void validate_config(const GenConfig& config);

enum class GenMode { Direct, Representation };

struct GeneratedProgram {
  /// The program text, exactly as produced (possibly invalid for other
  /// platforms in representation mode).
  std::string qasm;
  GenMode mode = GenMode::Direct;
  std::uint64_t seed = 0;
  std::size_t stream_index = 0;
  std::optional<std::string> adapter_used;
  /// Representation mode: canonical text of the circuit handed to the
  /// adapter's exporter, kept for replay.
  std::optional<std::string> source_qasm;
};

GenMode choose_mode(const GenConfig& config, std::size_t stream_index);

GeneratedProgram generate_direct(const GenConfig& config, std::size_t stream_index);

/// Random circuit with the same statement distribution as direct mode;
/// library gates are inlined and tagged as composites.
Circuit random_circuit(const GenConfig& config, Rng& rng);

/// Builds a circuit for `stream_index` and exports it through `adapter`.
/// Adapter failures are rethrown with stage "generate-export".
GeneratedProgram generate_via_representation(const GenConfig& config, Adapter& adapter,
                                             std::size_t stream_index);

/// Canonical text of the circuit generate_via_representation would build.
std::string representation_source(const GenConfig& config, std::size_t stream_index);

/// The export step alone, shared with replay: lowers `source_qasm` and
/// hands the circuit to the adapter.
std::string export_source(const std::string& source_qasm, Adapter& adapter);

}  // namespace crossqasm
