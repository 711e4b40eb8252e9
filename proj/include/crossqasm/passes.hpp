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
#include <vector>

#include "crossqasm/circuit.hpp"

namespace crossqasm {

using Mat2 = std::array<Complex, 4>;

/// U = e^{i phase} Rz(phi) Ry(theta) Rz(lambda), so u3(theta, phi, lambda)
/// equals U up to global phase.
struct EulerAngles {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  double phase = 0.0;
};

EulerAngles euler_zyz(const Mat2& u);
Mat2 single_qubit_matrix(const GateApp& op);
Mat2 mat2_mul(const Mat2& a, const Mat2& b);

/// Rewrites one op into {1-qubit builtins, cx} with a fixed table.
std::vector<GateApp> decompose_to_cx(const GateApp& op);

/// Rewrites one op into {u3, cx}.
std::vector<GateApp> decompose_u3cx(const GateApp& op);

/// Rewrites one op into {rz, sx, x, cx}.
std::vector<GateApp> decompose_rzsxxcx(const GateApp& op);

namespace passes {

/// Cancels adjacent inverse pairs (self-inverse gates, s/sdg, t/tdg, and
/// rotations whose angles sum to exactly zero) plus identity gates, until
/// no pair remains.
Circuit remove_redundancies(const Circuit& c);

/// Cancels adjacent self-inverse gates and s/sdg, t/tdg pairs with a single
/// stack-based sweep.
Circuit cancel_inverses(const Circuit& c);

/// Fuses adjacent same-axis rotations on identical operands; angles add
/// modulo 4 pi and an exactly zero result is dropped.
Circuit merge_rotations(const Circuit& c);

/// Replaces every run of two or more single-qubit ops on one qubit with one
/// u3 (dropped if it is the identity up to phase).
Circuit fuse_single_qubit_runs(const Circuit& c);

Circuit rebase_u3cx(const Circuit& c);
Circuit rebase_rzsxxcx(const Circuit& c);

/// Topological re-listing that emits ready single-qubit ops in ascending
/// qubit order before any multi-qubit op. Only ops on disjoint qubits are
/// commuted.
Circuit reorder_qubit_major(const Circuit& c);

}  // namespace passes
}  // namespace crossqasm
