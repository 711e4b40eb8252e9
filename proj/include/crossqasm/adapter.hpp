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
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crossqasm/circuit.hpp"

namespace crossqasm {

/// Any failure inside a platform. `message` is the platform's own text
/// without source position; `location` carries "line:column" when known.
class AdapterFailure : public std::runtime_error {
 public:
  AdapterFailure(std::string stage, std::string message, std::string location = {});

  const std::string& stage() const noexcept { return stage_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& location() const noexcept { return location_; }

  /// Free-form extra context such as a child process's stderr.
  const std::string& diagnostics() const noexcept { return diagnostics_; }
  void set_diagnostics(std::string text) { diagnostics_ = std::move(text); }

 private:
  std::string stage_;
  std::string message_;
  std::string location_;
  std::string diagnostics_;
};

/// A platform under test: importer, exporter and a named transform set.
/// Handles are opaque tokens owned by one adapter session.
class Adapter {
 public:
  virtual ~Adapter() = default;

  virtual std::string id() const = 0;
  virtual std::string import_qasm(const std::string& qasm) = 0;
  virtual std::string transform(const std::string& handle, const std::string& transform_id) = 0;
  virtual std::string export_qasm(const std::string& handle) = 0;
  virtual std::vector<std::string> list_transforms() = 0;

  /// Drops a handle the caller no longer needs. Optional for adapters.
  virtual void release(const std::string& handle) { (void)handle; }

  /// Exports a circuit built directly at the representation level. The
  /// default goes through the adapter's own importer.
  virtual std::string export_circuit(const Circuit& circuit);
};

/// In-process platform logic; stateless and shareable across sessions.
class Platform {
 public:
  virtual ~Platform() = default;

  virtual std::string name() const = 0;
  virtual Circuit import_program(const std::string& qasm) const = 0;
  virtual std::vector<std::string> transforms() const = 0;
  virtual Circuit apply(const Circuit& circuit, const std::string& transform_id) const = 0;
  virtual std::string export_program(const Circuit& circuit) const = 0;
};

/// Reference platform A: parse+lower / raise+print, transforms
/// opt.remove_redundancies, rebase.u3cx, opt.level1.
std::shared_ptr<const Platform> make_ref_a();

/// Reference platform B: same importer, transforms opt.cancel_inverses,
/// opt.merge_rotations, rebase.rzsxxcx; exports in qubit-major order.
std::shared_ptr<const Platform> make_ref_b();

enum class FaultKind { None, C4xForC3xOnExport, DropGatedefOnExport, CuWrongUnitaryInTransform };

std::string_view fault_name(FaultKind kind);
std::optional<FaultKind> parse_fault(std::string_view name);

/// Wraps `base` with one injected fault. The id is "<base>:<fault>", or
/// the base id for FaultKind::None.
std::shared_ptr<const Platform> make_mutant(std::shared_ptr<const Platform> base, FaultKind fault);

/// Session over a Platform with a handle table ("h1", "h2", ...).
class InProcessAdapter : public Adapter {
 public:
  explicit InProcessAdapter(std::shared_ptr<const Platform> platform);

  std::string id() const override;
  std::string import_qasm(const std::string& qasm) override;
  std::string transform(const std::string& handle, const std::string& transform_id) override;
  std::string export_qasm(const std::string& handle) override;
  std::vector<std::string> list_transforms() override;
  void release(const std::string& handle) override;
  std::string export_circuit(const Circuit& circuit) override;

  std::size_t live_handles() const { return handles_.size(); }

 private:
  const Circuit& lookup(const std::string& handle, const char* stage) const;
  std::string store(Circuit c);

  std::shared_ptr<const Platform> platform_;
  std::map<std::string, Circuit, std::less<>> handles_;
  std::size_t next_handle_ = 1;
};

/// How to build one adapter. Subprocess adapters need `command`.
struct AdapterSpec {
  enum class Kind { Builtin, Mutant, Subprocess };
  std::string id;
  Kind kind = Kind::Builtin;
  std::string base;
  FaultKind fault = FaultKind::None;
  std::string command;
  double timeout_secs = 30.0;
};

/// Resolves "ref_a", "ref_b" and "<base>:<fault>" ids.
std::optional<AdapterSpec> builtin_spec(std::string_view id);

/// Creates a fresh session for a spec. Throws std::invalid_argument for
/// unknown ids.
std::unique_ptr<Adapter> make_adapter(const AdapterSpec& spec);

}  // namespace crossqasm
