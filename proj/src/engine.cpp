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

#include "crossqasm/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace crossqasm {

const IteStep* EquivalenceClass::crash() const {
  for (const auto& s : provenance) {
    if (!s.ok) return &s;
  }
  return nullptr;
}

std::string class_id_for(std::size_t stream_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "c%05zu", stream_index);
  return buf;
}

StageTimes& StageTimes::operator+=(const StageTimes& o) {
  generator += o.generator;
  import += o.import;
  transform += o.transform;
  export_ += o.export_;
  detection += o.detection;
  return *this;
}

AdapterSet::AdapterSet(std::map<std::string, AdapterSpec> specs) : specs_(std::move(specs)) {}

Adapter& AdapterSet::get(const std::string& id) {
  auto it = live_.find(id);
  if (it != live_.end()) return *it->second;
  auto spec = specs_.find(id);
  if (spec == specs_.end()) throw std::invalid_argument("unknown adapter '" + id + "'");
  return *live_.emplace(id, make_adapter(spec->second)).first->second;
}

void AdapterSet::add(const std::string& id, std::unique_ptr<Adapter> adapter) {
  specs_.erase(id);
  live_[id] = std::move(adapter);
}

std::map<std::string, AdapterSpec> resolve_specs(const std::vector<std::string>& ids,
                                                 const std::vector<AdapterSpec>& extra) {
  std::map<std::string, AdapterSpec> out;
  for (const auto& id : ids) {
    auto it = std::find_if(extra.begin(), extra.end(), [&](const AdapterSpec& s) { return s.id == id; });
    if (it != extra.end()) {
      out[id] = *it;
      continue;
    }
    auto spec = builtin_spec(id);
    if (!spec) throw std::invalid_argument("unknown adapter '" + id + "'");
    out[id] = *spec;
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
auto timed(StageTimes::Dur* slot, const char* stage, Fn&& fn) {
  const auto start = Clock::now();
  struct Charge {
    StageTimes::Dur* slot;
    Clock::time_point start;
    ~Charge() {
      if (slot) *slot += Clock::now() - start;
    }
  } charge{slot, start};
  try {
    return fn();
  } catch (const AdapterFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw AdapterFailure(stage, e.what());
  }
}

IteStep failed_step(std::size_t step, std::string adapter, std::string transform, const AdapterFailure& f) {
  IteStep s;
  s.step = step;
  s.adapter = std::move(adapter);
  s.transform = std::move(transform);
  s.ok = false;
  s.stage = f.stage();
  s.message = f.message();
  s.location = f.location();
  s.diagnostics = f.diagnostics();
  return s;
}

}  // namespace

std::string execute_step(Adapter& adapter, const std::string& qasm, const std::string& transform,
                         StageTimes* times) {
  const std::string h = timed(times ? &times->import : nullptr, "import",
                              [&] { return adapter.import_qasm(qasm); });
  std::string h2 = h;
  if (transform != kIdentityTransform) {
    h2 = timed(times ? &times->transform : nullptr, "transform",
               [&] { return adapter.transform(h, transform); });
  }
  std::string out = timed(times ? &times->export_ : nullptr, "export",
                          [&] { return adapter.export_qasm(h2); });
  adapter.release(h);
  if (h2 != h) adapter.release(h2);
  return out;
}

EquivalenceClass run_chain(const GeneratedProgram& initial, const IteConfig& config, AdapterSet& adapters,
                           std::size_t stream_index, StageTimes* times) {
  if (config.iterations == 0) throw std::invalid_argument("iterations must be at least 1");
  if (config.adapters.empty()) throw std::invalid_argument("adapter set is empty");
  EquivalenceClass cls;
  cls.class_id = class_id_for(stream_index);
  cls.stream_index = stream_index;
  cls.initial = initial;
  cls.members.push_back({initial.qasm, 0});
  if (initial.mode == GenMode::Representation && initial.adapter_used) {
    cls.provenance.push_back({0, *initial.adapter_used, "", true, "", "", "", ""});
  }

  Rng rng(derive_seed(config.seed, stream_index, "ite"));
  for (std::size_t i = 1; i <= config.iterations; ++i) {
    const std::string& p = config.adapters[rng.index(config.adapters.size())];
    std::string t;
    try {
      Adapter& adapter = adapters.get(p);
      const auto ts = timed(times ? &times->transform : nullptr, "list_transforms",
                            [&] { return adapter.list_transforms(); });
      t = ts.empty() ? std::string(kIdentityTransform) : ts[rng.index(ts.size())];
      std::string next = execute_step(adapter, cls.members.back().qasm, t, times);
      cls.provenance.push_back({i, p, t, true, "", "", "", ""});
      cls.members.push_back({std::move(next), i});
    } catch (const AdapterFailure& f) {
      cls.provenance.push_back(failed_step(i, p, t, f));
      break;
    }
  }
  return cls;
}

EquivalenceClass build_class(const GenConfig& gen, const IteConfig& config, AdapterSet& adapters,
                             std::size_t stream_index, StageTimes* times) {
  const auto gen_start = Clock::now();
  auto charge_gen = [&] {
    if (times) times->generator += Clock::now() - gen_start;
  };
  GeneratedProgram initial;
  if (choose_mode(gen, stream_index) == GenMode::Direct) {
    initial = generate_direct(gen, stream_index);
  } else {
    Rng pick(derive_seed(gen.seed, stream_index, "gen-adapter"));
    const std::string& id = config.adapters[pick.index(config.adapters.size())];
    initial.mode = GenMode::Representation;
    initial.seed = gen.seed;
    initial.stream_index = stream_index;
    initial.adapter_used = id;
    initial.source_qasm = representation_source(gen, stream_index);
    try {
      Adapter& adapter = adapters.get(id);
      initial.qasm = timed(nullptr, "generate-export",
                           [&] { return export_source(*initial.source_qasm, adapter); });
    } catch (const AdapterFailure& f) {
      charge_gen();
      EquivalenceClass cls;
      cls.class_id = class_id_for(stream_index);
      cls.stream_index = stream_index;
      cls.initial = initial;
      AdapterFailure tagged("generate-export", f.message(), f.location());
      tagged.set_diagnostics(f.diagnostics());
      cls.provenance.push_back(failed_step(0, id, "", tagged));
      return cls;
    }
  }
  charge_gen();
  return run_chain(initial, config, adapters, stream_index, times);
}

ReplayResult replay(const std::string& start, const std::vector<IteStep>& steps, AdapterSet& adapters) {
  ReplayResult r;
  std::string current = start;
  std::size_t first = 0;
  if (!steps.empty() && steps[0].step == 0) {
    first = 1;
    try {
      Adapter& a = adapters.get(steps[0].adapter);
      current = timed(nullptr, "generate-export", [&] { return export_source(start, a); });
    } catch (const AdapterFailure& f) {
      AdapterFailure tagged("generate-export", f.message(), f.location());
      r.failure = failed_step(0, steps[0].adapter, "", tagged);
      return r;
    }
  }
  r.programs.push_back(current);
  for (std::size_t k = first; k < steps.size(); ++k) {
    const auto& s = steps[k];
    try {
      current = execute_step(adapters.get(s.adapter), current, s.transform);
      r.programs.push_back(current);
    } catch (const AdapterFailure& f) {
      r.failure = failed_step(s.step, s.adapter, s.transform, f);
      return r;
    }
  }
  return r;
}

}  // namespace crossqasm
