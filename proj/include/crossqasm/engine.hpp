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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crossqasm/adapter.hpp"
#include "crossqasm/generator.hpp"

namespace crossqasm {

struct IteConfig {
  std::size_t iterations = 5;
  /// The platform set, by adapter id.
  std::vector<std::string> adapters{"ref_a", "ref_b"};
  std::uint64_t seed = 0;
  /// Stopping condition: number of classes (initial programs) to build.
  std::size_t max_classes = 100;
};

/// Transform id recorded when the sampled adapter offers no transforms.
inline constexpr const char* kIdentityTransform = "identity";

struct IteStep {
  /// 0 is the generation-time export, 1..m the ITE iterations.
  std::size_t step = 0;
  std::string adapter;
  std::string transform;
  bool ok = true;
  std::string stage;
  std::string message;
  std::string location;
  std::string diagnostics;

  friend bool operator==(const IteStep&, const IteStep&) = default;
};

struct Member {
  std::string qasm;
  std::size_t step = 0;
  friend bool operator==(const Member&, const Member&) = default;
};

struct EquivalenceClass {
  std::string class_id;
  std::size_t stream_index = 0;
  GeneratedProgram initial;
  /// members[0] is the initial program; the chain stops at the first crash.
  std::vector<Member> members;
  std::vector<IteStep> provenance;

  /// The failing step, if any.
  const IteStep* crash() const;
};

std::string class_id_for(std::size_t stream_index);

/// Wall time spent per component, summed over workers.
struct StageTimes {
  using Dur = std::chrono::duration<double>;
  Dur generator{0};
  Dur import{0};
  Dur transform{0};
  Dur export_{0};
  Dur detection{0};

  StageTimes& operator+=(const StageTimes& o);
};

/// One live session per adapter id, created lazily from the specs.
class AdapterSet {
 public:
  explicit AdapterSet(std::map<std::string, AdapterSpec> specs);

  Adapter& get(const std::string& id);
  /// Installs a ready session under `id`, replacing any spec of that id.
  void add(const std::string& id, std::unique_ptr<Adapter> adapter);
  const std::map<std::string, AdapterSpec>& specs() const { return specs_; }

 private:
  std::map<std::string, AdapterSpec> specs_;
  std::map<std::string, std::unique_ptr<Adapter>> live_;
};

/// Resolves builtin ids; entries in `extra` (e.g. subprocess adapters)
/// take precedence. Throws std::invalid_argument for unknown ids.
std::map<std::string, AdapterSpec> resolve_specs(const std::vector<std::string>& ids,
                                                 const std::vector<AdapterSpec>& extra = {});

/// One import/transform/export round. Returns the exported text.
std::string execute_step(Adapter& adapter, const std::string& qasm, const std::string& transform,
                         StageTimes* times = nullptr);

/// Runs the ITE loop from `initial` with sampling seeded by
/// (config.seed, stream_index).
EquivalenceClass run_chain(const GeneratedProgram& initial, const IteConfig& config,
                           AdapterSet& adapters, std::size_t stream_index,
                           StageTimes* times = nullptr);

/// Generation (mode, exporting adapter) followed by run_chain. A
/// generation-time export failure yields a class with no members and one
/// failed step 0.
EquivalenceClass build_class(const GenConfig& gen, const IteConfig& config, AdapterSet& adapters,
                             std::size_t stream_index, StageTimes* times = nullptr);

/// Result of re-executing recorded steps on a (possibly edited) start.
struct ReplayResult {
  std::vector<std::string> programs;  // indexed by step; [0] is the seed
  std::optional<IteStep> failure;
};

/// Re-executes `steps` in order with their recorded adapter and transform.
/// A step 0 entry means `start` is a representation-level source that is
/// first exported through that adapter.
ReplayResult replay(const std::string& start, const std::vector<IteStep>& steps, AdapterSet& adapters);

}  // namespace crossqasm
