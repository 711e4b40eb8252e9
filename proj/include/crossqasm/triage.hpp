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
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crossqasm/engine.hpp"
#include "crossqasm/oracle.hpp"

namespace crossqasm {

class SignalNotReproducible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Signal = std::function<bool(const QasmProgram&)>;

/// Zeller's ddmin over a list of `n` items. `test` receives the kept item
/// indices in ascending order and returns true when the failure persists.
/// The result is 1-minimal.
std::vector<std::size_t> ddmin_indices(std::size_t n,
                                       const std::function<bool(const std::vector<std::size_t>&)>& test);

/// Statement-level reduction. Registers and gate definitions are kept;
/// definitions no remaining statement uses are pruned afterwards when the
/// signal still holds. Throws SignalNotReproducible if the signal does not
/// hold on entry.
QasmProgram ddmin(const QasmProgram& program, const Signal& signal);

/// Everything needed to replay one warning.
struct ReplayContext {
  /// The program a reduction edits: the representation-level source in
  /// representation mode (steps then start with step 0), else the seed.
  std::string start;
  std::vector<IteStep> steps;
  Warning warning;
  double tolerance = kDefaultTolerance;
  std::size_t max_qubits = kDefaultUnitaryQubitLimit;
};

ReplayContext replay_context(const EquivalenceClass& cls, const Warning& warning,
                             double tolerance = kDefaultTolerance,
                             std::size_t max_qubits = kDefaultUnitaryQubitLimit);

/// Crash: replay fails at the same step with the same stage and message.
/// Oracle-stage crash: the member at that step fails to parse with the
/// same message. Inequivalence: the recorded pair is decided not
/// equivalent.
Signal make_signal(const ReplayContext& ctx, AdapterSet& adapters);

struct Cluster {
  std::string key;
  std::vector<std::size_t> members;
  std::size_t representative = 0;
};

/// Replaces handle tokens, angle literals and numerals with placeholders.
std::string normalize_message(const std::string& message);

std::string cluster_key(const Warning& w);

std::vector<Cluster> cluster_warnings(const std::vector<Warning>& warnings);

/// Shannon entropy (bits) of the n-grams of printed statement lines.
double entropy_ngrams(const std::vector<std::string>& lines, std::size_t n);
double entropy_ngrams(const QasmProgram& program, std::size_t n);

struct ProgramMetrics {
  std::string class_id;
  std::size_t step = 0;
  std::size_t total_gates = 0;
  std::size_t unique_gates = 0;
  double entropy2 = 0.0;
  double entropy3 = 0.0;
};

/// Nullopt when the text does not parse or lower.
std::optional<ProgramMetrics> program_metrics(const std::string& qasm, std::string class_id, std::size_t step);

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;  // 95% normal-approximation interval
};

MeanCi mean_ci(const std::vector<double>& values);

struct IterationAggregate {
  std::size_t step = 0;
  std::size_t count = 0;
  MeanCi total_gates, unique_gates, entropy2, entropy3;
};

/// Aggregates per step index, ascending.
std::vector<IterationAggregate> aggregate_by_step(const std::vector<ProgramMetrics>& metrics);

}  // namespace crossqasm
