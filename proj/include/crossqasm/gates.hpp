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

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace crossqasm {

using Complex = std::complex<double>;

/// The closed builtin gate vocabulary enabled by `include "qelib1.inc"`.
enum class GateKind {
  H, X, Y, Z, S, Sdg, T, Tdg, SX,
  RX, RY, RZ, P, U1, U2, U3,
  CX, CY, CZ, CH, Swap, CRX, CRY, CRZ, CP, CU, RXX,
  CCX, C3X, C4X, CSwap,
  Id, Barrier,
};

inline constexpr std::size_t kGateKindCount = 33;

struct GateInfo {
  GateKind kind;
  std::string_view name;
  /// Number of qubit operands; 0 means variadic (barrier only).
  std::size_t num_qubits;
  std::size_t num_params;
};

const GateInfo& gate_info(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> lookup_gate(std::string_view name);

/// All builtin kinds in declaration order.
std::span<const GateInfo> all_gates();

bool is_self_inverse(GateKind kind);

/// s <-> sdg, t <-> tdg; nullopt for kinds without a named inverse.
std::optional<GateKind> named_inverse(GateKind kind);

/// Rotation-like gates whose inverse is the same gate with negated angle
/// and whose composition adds angles.
bool is_additive_rotation(GateKind kind);

/// Gates whose matrix is invariant under swapping their two operands.
bool is_symmetric_two_qubit(GateKind kind);

/// Dense 2^k x 2^k row-major matrix of a k-qubit gate in the local basis
/// where operand j contributes bit j of the index.
std::vector<Complex> gate_matrix(GateKind kind, std::span<const double> params);

}  // namespace crossqasm
