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

#include "crossqasm/adapter.hpp"

#include <algorithm>
#include <sstream>

#include "crossqasm/library.hpp"
#include "crossqasm/passes.hpp"
#include "crossqasm/subprocess.hpp"

namespace crossqasm {

AdapterFailure::AdapterFailure(std::string stage, std::string message, std::string location)
    : std::runtime_error(stage + ": " + message),
      stage_(std::move(stage)),
      message_(std::move(message)),
      location_(std::move(location)) {}

std::string Adapter::export_circuit(const Circuit& circuit) {
  const std::string handle = import_qasm(print(raise(circuit)));
  std::string out = export_qasm(handle);
  release(handle);
  return out;
}

namespace {

Circuit parse_and_lower(const std::string& qasm) {
  try {
    return lower(parse(qasm));
  } catch (const ParseError& e) {
    throw AdapterFailure("import", e.message(),
                         std::to_string(e.position().line) + ":" + std::to_string(e.position().column));
  } catch (const LoweringError& e) {
    throw AdapterFailure("import", e.what());
  }
}

[[noreturn]] void unknown_transform(const std::string& id) {
  throw AdapterFailure("transform", "unknown transform '" + id + "'");
}

class RefA : public Platform {
 public:
  std::string name() const override { return "ref_a"; }
  Circuit import_program(const std::string& qasm) const override { return parse_and_lower(qasm); }
  std::vector<std::string> transforms() const override {
    return {"opt.remove_redundancies", "rebase.u3cx", "opt.level1"};
  }
  Circuit apply(const Circuit& c, const std::string& id) const override {
    if (id == "opt.remove_redundancies") return passes::remove_redundancies(c);
    if (id == "rebase.u3cx") return passes::rebase_u3cx(c);
    if (id == "opt.level1") return passes::fuse_single_qubit_runs(passes::remove_redundancies(c));
    unknown_transform(id);
  }
  std::string export_program(const Circuit& c) const override { return print(raise(c)); }
};

class RefB : public Platform {
 public:
  std::string name() const override { return "ref_b"; }
  Circuit import_program(const std::string& qasm) const override { return parse_and_lower(qasm); }
  std::vector<std::string> transforms() const override {
    return {"opt.cancel_inverses", "opt.merge_rotations", "rebase.rzsxxcx"};
  }
  Circuit apply(const Circuit& c, const std::string& id) const override {
    if (id == "opt.cancel_inverses") return passes::cancel_inverses(c);
    if (id == "opt.merge_rotations") return passes::merge_rotations(c);
    if (id == "rebase.rzsxxcx") return passes::rebase_rzsxxcx(c);
    unknown_transform(id);
  }
  std::string export_program(const Circuit& c) const override {
    return print(raise(passes::reorder_qubit_major(c)));
  }
};

/// Undoes the c4x rename on the mutant's own import, as the faulty
/// platform reads its own output back without complaint.
std::string accept_own_c4x(const std::string& qasm) {
  std::istringstream in(qasm);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t");
    if (start != std::string::npos && line.compare(start, 4, "c4x ") == 0 &&
        std::count(line.begin(), line.end(), '[') == 4) {
      line.replace(start, 3, "c3x");
    }
    out += line;
    out += '\n';
  }
  return out;
}

/// Re-inserts library gate definitions the mutant itself dropped.
std::string restore_library_defs(std::string qasm) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      parse(qasm);
      return qasm;
    } catch (const ParseError& e) {
      const std::string& m = e.message();
      const std::string suffix = "' is not defined in this scope";
      if (m.size() < suffix.size() + 2 || m.front() != '\'' ||
          m.compare(m.size() - suffix.size(), suffix.size(), suffix) != 0) {
        return qasm;
      }
      const auto* def = custom_gate(m.substr(1, m.size() - suffix.size() - 1));
      if (!def) return qasm;
      QasmProgram holder;
      holder.gate_defs.push_back(*def);
      std::string text = print(holder);
      text = text.substr(text.find("gate "));
      const std::string marker = "include \"qelib1.inc\";\n";
      auto at = qasm.find(marker);
      if (at == std::string::npos) return qasm;
      qasm.insert(at + marker.size(), text);
    }
  }
  return qasm;
}

class Mutant : public Platform {
 public:
  Mutant(std::shared_ptr<const Platform> base, FaultKind fault) : base_(std::move(base)), fault_(fault) {}

  std::string name() const override {
    if (fault_ == FaultKind::None) return base_->name();
    return base_->name() + ":" + std::string(fault_name(fault_));
  }
  Circuit import_program(const std::string& qasm) const override {
    switch (fault_) {
      case FaultKind::C4xForC3xOnExport: return base_->import_program(accept_own_c4x(qasm));
      case FaultKind::DropGatedefOnExport: return base_->import_program(restore_library_defs(qasm));
      default: return base_->import_program(qasm);
    }
  }
  std::vector<std::string> transforms() const override { return base_->transforms(); }
  Circuit apply(const Circuit& c, const std::string& id) const override {
    if (fault_ != FaultKind::CuWrongUnitaryInTransform) return base_->apply(c, id);
    Circuit damaged = c;
    for (auto& op : damaged.ops) {
      if (op.kind == GateKind::CU) op.params[2] = -op.params[2];
    }
    return base_->apply(damaged, id);
  }
  std::string export_program(const Circuit& c) const override {
    std::string text = base_->export_program(c);
    if (fault_ != FaultKind::C4xForC3xOnExport && fault_ != FaultKind::DropGatedefOnExport) return text;
    QasmProgram p = parse(text);
    if (fault_ == FaultKind::DropGatedefOnExport) {
      p.gate_defs.clear();
    } else {
      for (auto& st : p.statements) {
        if (st.gate_name == "c3x") st.gate_name = "c4x";
      }
    }
    return print(p);
  }

 private:
  std::shared_ptr<const Platform> base_;
  FaultKind fault_;
};

}  // namespace

std::shared_ptr<const Platform> make_ref_a() { return std::make_shared<RefA>(); }
std::shared_ptr<const Platform> make_ref_b() { return std::make_shared<RefB>(); }

std::string_view fault_name(FaultKind kind) {
  switch (kind) {
    case FaultKind::None: return "none";
    case FaultKind::C4xForC3xOnExport: return "c4x_for_c3x_on_export";
    case FaultKind::DropGatedefOnExport: return "drop_gatedef_on_export";
    case FaultKind::CuWrongUnitaryInTransform: return "cu_wrong_unitary_in_transform";
  }
  return "none";
}

std::optional<FaultKind> parse_fault(std::string_view name) {
  for (auto k : {FaultKind::None, FaultKind::C4xForC3xOnExport, FaultKind::DropGatedefOnExport,
                 FaultKind::CuWrongUnitaryInTransform}) {
    if (fault_name(k) == name) return k;
  }
  return std::nullopt;
}

std::shared_ptr<const Platform> make_mutant(std::shared_ptr<const Platform> base, FaultKind fault) {
  return std::make_shared<Mutant>(std::move(base), fault);
}

// ---------------------------------------------------------------------------
// InProcessAdapter

InProcessAdapter::InProcessAdapter(std::shared_ptr<const Platform> platform)
    : platform_(std::move(platform)) {}

std::string InProcessAdapter::id() const { return platform_->name(); }

const Circuit& InProcessAdapter::lookup(const std::string& handle, const char* stage) const {
  auto it = handles_.find(handle);
  if (it == handles_.end()) throw AdapterFailure(stage, "unknown handle '" + handle + "'");
  return it->second;
}

std::string InProcessAdapter::store(Circuit c) {
  std::string h = "h" + std::to_string(next_handle_++);
  handles_.emplace(h, std::move(c));
  return h;
}

std::string InProcessAdapter::import_qasm(const std::string& qasm) {
  Circuit c;
  try {
    c = platform_->import_program(qasm);
  } catch (const AdapterFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw AdapterFailure("import", e.what());
  }
  return store(std::move(c));
}

std::string InProcessAdapter::transform(const std::string& handle, const std::string& transform_id) {
  const Circuit& in = lookup(handle, "transform");
  Circuit out;
  try {
    out = platform_->apply(in, transform_id);
  } catch (const AdapterFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw AdapterFailure("transform", e.what());
  }
  return store(std::move(out));
}

std::string InProcessAdapter::export_qasm(const std::string& handle) {
  const Circuit& c = lookup(handle, "export");
  try {
    return platform_->export_program(c);
  } catch (const AdapterFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw AdapterFailure("export", e.what());
  }
}

std::vector<std::string> InProcessAdapter::list_transforms() { return platform_->transforms(); }

void InProcessAdapter::release(const std::string& handle) { handles_.erase(handle); }

std::string InProcessAdapter::export_circuit(const Circuit& circuit) {
  try {
    return platform_->export_program(circuit);
  } catch (const AdapterFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw AdapterFailure("export", e.what());
  }
}

// ---------------------------------------------------------------------------
// Registry

std::optional<AdapterSpec> builtin_spec(std::string_view id) {
  AdapterSpec spec;
  spec.id = std::string(id);
  const auto colon = id.find(':');
  const std::string_view base = id.substr(0, colon);
  if (base != "ref_a" && base != "ref_b") return std::nullopt;
  spec.base = std::string(base);
  if (colon == std::string_view::npos) return spec;
  auto fault = parse_fault(id.substr(colon + 1));
  if (!fault) return std::nullopt;
  spec.kind = AdapterSpec::Kind::Mutant;
  spec.fault = *fault;
  return spec;
}

std::unique_ptr<Adapter> make_adapter(const AdapterSpec& spec) {
  if (spec.kind == AdapterSpec::Kind::Subprocess) {
    return std::make_unique<SubprocessAdapter>(spec.id, spec.command, spec.timeout_secs);
  }
  const std::string base = spec.base.empty() ? spec.id : spec.base;
  std::shared_ptr<const Platform> platform;
  if (base == "ref_a") platform = make_ref_a();
  else if (base == "ref_b") platform = make_ref_b();
  else throw std::invalid_argument("unknown adapter '" + spec.id + "'");
  if (spec.kind == AdapterSpec::Kind::Mutant) platform = make_mutant(platform, spec.fault);
  return std::make_unique<InProcessAdapter>(std::move(platform));
}

}  // namespace crossqasm
