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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crossqasm/engine.hpp"
#include "crossqasm/generator.hpp"
#include "crossqasm/oracle.hpp"
#include "crossqasm/triage.hpp"
#include "json.hpp"

namespace crossqasm {

inline constexpr const char* kVersion = "0.1.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleConfig {
  std::size_t k = 5;
  double tolerance = kDefaultTolerance;
  std::size_t max_oracle_qubits = kDefaultUnitaryQubitLimit;
  /// Skip equivalence checks entirely (metrics-only campaigns).
  bool enabled = true;
};

struct TriageConfig {
  /// Reduce one representative warning per cluster.
  bool reduce = true;
};

struct CampaignConfig {
  std::uint64_t seed = 0;
  GenConfig gen;
  IteConfig ite;
  OracleConfig oracle;
  TriageConfig triage;
  /// Adapters beyond the builtin ids (subprocess, or explicit mutants).
  std::vector<AdapterSpec> extra_adapters;
  std::filesystem::path out_dir = "crossqasm-out";
  std::size_t workers = 1;
  double timeout_secs = 30.0;

  /// Copies `seed` into the generator and ITE configs.
  void sync_seed();
};

/// Every field is optional. Unknown keys and bad values raise ConfigError.
CampaignConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const CampaignConfig& c);
CampaignConfig load_config(const std::filesystem::path& path);

/// Checks ranges and resolves adapter ids. Throws ConfigError.
void validate_campaign(const CampaignConfig& c);

struct TimingFractions {
  double generator = 0.0;
  double ite = 0.0;
  double detection = 0.0;
  double import = 0.0;
  double transform = 0.0;
  double export_ = 0.0;
};

/// Component and ITE-stage shares; each level sums to one (all zero when
/// nothing was timed).
TimingFractions timing_report(const StageTimes& t);

struct CampaignCounts {
  std::size_t programs = 0;
  std::size_t classes = 0;
  std::size_t members = 0;
  std::size_t crashes = 0;
  std::size_t inequivalences = 0;
  std::size_t undecided = 0;
  std::size_t clusters = 0;
  std::size_t pairs_checked = 0;
  friend bool operator==(const CampaignCounts&, const CampaignCounts&) = default;
};

struct CampaignResult {
  std::vector<EquivalenceClass> classes;
  std::vector<Warning> warnings;
  std::vector<Cluster> clusters;
  std::vector<ProgramMetrics> metrics;
  CampaignCounts counts;
  StageTimes times;
  TimingFractions fractions;
};

/// Generation, ITE, oracle and triage for every program. Writes the
/// report layout under config.out_dir when `persist` is set; the directory
/// must not already contain files.
CampaignResult run_campaign(const CampaignConfig& config, bool persist = true);

nlohmann::json report_json(const CampaignConfig& config, const CampaignResult& result);

/// Writes seed programs only. Returns the number written; generation
/// failures are reported on `log` but not written.
std::size_t generate_programs(const CampaignConfig& config, std::size_t count, std::ostream& log);

/// Re-vets the classes stored in `dir`; writes
/// `dir/check_k<k>_tol<tolerance>.json`.
VetResult check_directory(const std::filesystem::path& dir, std::size_t k, double tolerance,
                          std::size_t max_qubits = kDefaultUnitaryQubitLimit);

/// Reduces warning `id` of the campaign in `dir`, writing
/// `warnings/reduced_<id>.qasm` unless an identical file exists.
QasmProgram reduce_warning(const std::filesystem::path& dir, std::size_t id);

/// Recounts artifacts under `dir` and merges the stored report. Throws
/// ConfigError when `dir` holds no campaign.
nlohmann::json load_report(const std::filesystem::path& dir);

/// Loads the classes persisted under `dir`, ordered by class id.
std::vector<EquivalenceClass> load_classes(const std::filesystem::path& dir);

/// Loads `warnings/*.json` under `dir`, ordered by id.
std::vector<Warning> load_warnings(const std::filesystem::path& dir);

nlohmann::json warning_to_json(const Warning& w);
Warning warning_from_json(const nlohmann::json& j);

}  // namespace crossqasm
