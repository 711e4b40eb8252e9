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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crossqasm/circuit.hpp"
#include "crossqasm/engine.hpp"

namespace crossqasm {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr const char* kNotEquivalent = "not equivalent";

struct SelectedPair {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t diff = 0;
  friend bool operator==(const SelectedPair&, const SelectedPair&) = default;
};

struct PairSelection {
  std::string class_id;
  std::vector<SelectedPair> pairs;
};

class TooFewMembers : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Top-k unordered pairs by |g_i - g_j| descending, ties by (i, j).
PairSelection select_pairs(const std::vector<std::size_t>& gate_counts, std::size_t k,
                           std::string class_id = {});

enum class Verdict { Equivalent, NotEquivalent, Undecided };

struct EquivVerdict {
  Verdict verdict = Verdict::Undecided;
  /// "too_large" or "timeout" when undecided.
  std::string reason;
  Complex phase{1.0, 0.0};
  double distance = 0.0;
};

/// Same-dimension unitaries: equivalent iff the phase-corrected max-norm
/// residual is within tolerance.
EquivVerdict decide(const Unitary& a, const Unitary& b, double tolerance = kDefaultTolerance);

EquivVerdict check_equivalence(const Circuit& a, const Circuit& b, double tolerance = kDefaultTolerance,
                               std::size_t max_qubits = kDefaultUnitaryQubitLimit);

/// Lowers both programs. A narrower program is padded with idle qubits when
/// its register names are a prefix of the wider one's; otherwise differing
/// widths are not equivalent. Lowering errors propagate.
EquivVerdict check_equivalence(const QasmProgram& a, const QasmProgram& b,
                               double tolerance = kDefaultTolerance,
                               std::size_t max_qubits = kDefaultUnitaryQubitLimit);

struct Warning {
  enum class Kind { Crash, Inequivalence };

  std::size_t id = 0;
  Kind kind = Kind::Crash;
  std::string message;
  std::string stage;
  std::string location;
  std::string class_id;
  /// Step of the failing ITE step (crash) or of the last chain step.
  std::size_t step = 0;
  std::string adapter;
  std::string transform;
  std::optional<SelectedPair> pair;
  std::string provenance_path;
  std::optional<std::string> reduced_qasm;
  std::string reduced_path;
};

std::string_view kind_name(Warning::Kind kind);

struct VetResult {
  std::vector<Warning> warnings;
  std::size_t pairs_checked = 0;
  std::size_t undecided = 0;
};

/// Crash warning for a class whose chain failed; nullopt otherwise.
std::optional<Warning> crash_warning(const EquivalenceClass& cls);

/// Pair selection plus equivalence checks for one class. Classes with
/// fewer than two members are skipped. Members that fail to parse or lower
/// become crash warnings with stage "oracle".
VetResult vet_class(const EquivalenceClass& cls, std::size_t k, double tolerance = kDefaultTolerance,
                    std::size_t max_qubits = kDefaultUnitaryQubitLimit);

VetResult vet_classes(const std::vector<EquivalenceClass>& classes, std::size_t k,
                      double tolerance = kDefaultTolerance,
                      std::size_t max_qubits = kDefaultUnitaryQubitLimit);

}  // namespace crossqasm
