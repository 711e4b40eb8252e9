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

#include "crossqasm/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace crossqasm {

namespace fs = std::filesystem;
using nlohmann::json;

void CampaignConfig::sync_seed() {
  gen.seed = seed;
  ite.seed = seed;
}

// ---------------------------------------------------------------------------
// Config

namespace {

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* n) { return k == n; })) {
      throw ConfigError("unknown config field '" + where + k + "'");
    }
  }
}

std::string spec_kind_name(AdapterSpec::Kind k) {
  switch (k) {
    case AdapterSpec::Kind::Builtin: return "builtin";
    case AdapterSpec::Kind::Mutant: return "mutant";
    case AdapterSpec::Kind::Subprocess: return "subprocess";
  }
  return "builtin";
}

}  // namespace

CampaignConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"seed", "programs", "iterations", "num_qubits", "num_gates", "gate_pool", "custom_gates",
                  "mode_mix", "include_creg", "adapters", "oracle", "triage", "out_dir", "workers",
                  "timeout_secs"},
                 "");
  CampaignConfig c;
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("programs")) c.ite.max_classes = get_as<std::size_t>(j, "programs");
  if (j.contains("iterations")) c.ite.iterations = get_as<std::size_t>(j, "iterations");
  if (j.contains("num_qubits")) c.gen.num_qubits = get_as<std::size_t>(j, "num_qubits");
  if (j.contains("num_gates")) c.gen.num_gates = get_as<std::size_t>(j, "num_gates");
  if (j.contains("gate_pool")) {
    c.gen.gate_pool.clear();
    for (const auto& name : get_as<std::vector<std::string>>(j, "gate_pool")) {
      auto k = lookup_gate(name);
      if (!k) throw ConfigError("unknown gate '" + name + "' in gate_pool");
      c.gen.gate_pool.push_back(*k);
    }
  }
  if (j.contains("custom_gates")) c.gen.custom_gates = get_as<std::vector<std::string>>(j, "custom_gates");
  if (j.contains("mode_mix")) c.gen.mode_mix = get_as<double>(j, "mode_mix");
  if (j.contains("include_creg")) c.gen.include_creg = get_as<bool>(j, "include_creg");
  if (j.contains("timeout_secs")) c.timeout_secs = get_as<double>(j, "timeout_secs");
  if (j.contains("workers")) c.workers = get_as<std::size_t>(j, "workers");
  if (j.contains("out_dir")) c.out_dir = get_as<std::string>(j, "out_dir");
  if (j.contains("adapters")) {
    if (!j["adapters"].is_array()) throw ConfigError("config field 'adapters' must be a list");
    c.ite.adapters.clear();
    for (const auto& a : j["adapters"]) {
      if (a.is_string()) {
        c.ite.adapters.push_back(a.get<std::string>());
        continue;
      }
      if (!a.is_object() || !a.contains("id")) throw ConfigError("adapter entries need an 'id'");
      reject_unknown(a, {"id", "kind", "base", "fault", "command", "timeout_secs"}, "adapters.");
      AdapterSpec s;
      s.id = get_as<std::string>(a, "id");
      const std::string kind = a.contains("kind") ? get_as<std::string>(a, "kind") : "builtin";
      if (kind == "builtin") {
        c.ite.adapters.push_back(s.id);
        continue;
      }
      if (kind == "mutant") {
        s.kind = AdapterSpec::Kind::Mutant;
        s.base = a.contains("base") ? get_as<std::string>(a, "base") : "";
        auto f = parse_fault(a.contains("fault") ? get_as<std::string>(a, "fault") : "");
        if (!f) throw ConfigError("adapter '" + s.id + "' has an unknown fault");
        s.fault = *f;
      } else if (kind == "subprocess") {
        s.kind = AdapterSpec::Kind::Subprocess;
        if (!a.contains("command")) throw ConfigError("subprocess adapter '" + s.id + "' needs a command");
        s.command = get_as<std::string>(a, "command");
        s.timeout_secs = a.contains("timeout_secs") ? get_as<double>(a, "timeout_secs") : c.timeout_secs;
      } else {
        throw ConfigError("unknown adapter kind '" + kind + "'");
      }
      c.extra_adapters.push_back(s);
      c.ite.adapters.push_back(s.id);
    }
  }
  if (j.contains("oracle")) {
    const auto& o = j["oracle"];
    if (!o.is_object()) throw ConfigError("config field 'oracle' must be an object");
    reject_unknown(o, {"k", "tolerance", "max_oracle_qubits", "enabled"}, "oracle.");
    if (o.contains("k")) c.oracle.k = get_as<std::size_t>(o, "k");
    if (o.contains("tolerance")) c.oracle.tolerance = get_as<double>(o, "tolerance");
    if (o.contains("max_oracle_qubits")) c.oracle.max_oracle_qubits = get_as<std::size_t>(o, "max_oracle_qubits");
    if (o.contains("enabled")) c.oracle.enabled = get_as<bool>(o, "enabled");
  }
  if (j.contains("triage")) {
    const auto& t = j["triage"];
    if (!t.is_object()) throw ConfigError("config field 'triage' must be an object");
    reject_unknown(t, {"reduce"}, "triage.");
    if (t.contains("reduce")) c.triage.reduce = get_as<bool>(t, "reduce");
  }
  c.sync_seed();
  return c;
}

json config_to_json(const CampaignConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["programs"] = c.ite.max_classes;
  j["iterations"] = c.ite.iterations;
  j["num_qubits"] = c.gen.num_qubits;
  j["num_gates"] = c.gen.num_gates;
  json pool = json::array();
  for (auto k : c.gen.gate_pool) pool.push_back(std::string(gate_name(k)));
  j["gate_pool"] = pool;
  j["custom_gates"] = c.gen.custom_gates;
  j["mode_mix"] = c.gen.mode_mix;
  j["include_creg"] = c.gen.include_creg;
  json adapters = json::array();
  for (const auto& id : c.ite.adapters) {
    auto it = std::find_if(c.extra_adapters.begin(), c.extra_adapters.end(),
                           [&](const AdapterSpec& s) { return s.id == id; });
    if (it == c.extra_adapters.end()) {
      adapters.push_back(id);
      continue;
    }
    json a{{"id", it->id}, {"kind", spec_kind_name(it->kind)}};
    if (it->kind == AdapterSpec::Kind::Mutant) {
      a["base"] = it->base;
      a["fault"] = std::string(fault_name(it->fault));
    } else {
      a["command"] = it->command;
      a["timeout_secs"] = it->timeout_secs;
    }
    adapters.push_back(a);
  }
  j["adapters"] = adapters;
  j["oracle"] = {{"k", c.oracle.k},
                 {"tolerance", c.oracle.tolerance},
                 {"max_oracle_qubits", c.oracle.max_oracle_qubits},
                 {"enabled", c.oracle.enabled}};
  j["triage"] = {{"reduce", c.triage.reduce}};
  j["out_dir"] = c.out_dir.string();
  j["workers"] = c.workers;
  j["timeout_secs"] = c.timeout_secs;
  return j;
}

CampaignConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void validate_campaign(const CampaignConfig& c) {
  try {
    validate_config(c.gen);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.ite.iterations == 0) throw ConfigError("iterations must be at least 1");
  if (c.ite.adapters.empty()) throw ConfigError("adapter set is empty");
  if (c.oracle.k == 0) throw ConfigError("k must be at least 1");
  if (!(c.oracle.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (c.workers == 0) throw ConfigError("workers must be at least 1");
  if (!(c.timeout_secs > 0.0)) throw ConfigError("timeout_secs must be positive");
  try {
    resolve_specs(c.ite.adapters, c.extra_adapters);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Timing

TimingFractions timing_report(const StageTimes& t) {
  TimingFractions f;
  const double ite = (t.import + t.transform + t.export_).count();
  const double total = t.generator.count() + ite + t.detection.count();
  if (total > 0.0) {
    f.generator = t.generator.count() / total;
    f.detection = t.detection.count() / total;
    f.ite = 1.0 - f.generator - f.detection;
  }
  if (ite > 0.0) {
    f.import = t.import.count() / ite;
    f.transform = t.transform.count() / ite;
    f.export_ = 1.0 - f.import - f.transform;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Files

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes `content` unless the file exists; an existing file must already
/// hold exactly `content`.
void write_once(const fs::path& p, const std::string& content) {
  std::error_code ec;
  if (fs::exists(p, ec)) {
    if (read_file(p) == content) return;
    throw IoError("refusing to overwrite '" + p.string() + "'");
  }
  fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create '" + p.parent_path().string() + "': " + ec.message());
  std::ofstream out(p, std::ios::binary);
  out << content;
  if (!out) throw IoError("cannot write '" + p.string() + "'");
}

json load_json(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::exception& e) {
    throw IoError("'" + p.string() + "' is not valid JSON: " + e.what());
  }
}

std::string mode_name(GenMode m) { return m == GenMode::Direct ? "direct" : "representation"; }

json step_to_json(const IteStep& s) {
  json j{{"step", s.step}, {"adapter", s.adapter}, {"transform", s.transform}, {"ok", s.ok}};
  if (!s.ok) {
    j["stage"] = s.stage;
    j["message"] = s.message;
    j["location"] = s.location;
    if (!s.diagnostics.empty()) j["diagnostics"] = s.diagnostics;
  }
  return j;
}

IteStep step_from_json(const json& j) {
  IteStep s;
  s.step = j.at("step").get<std::size_t>();
  s.adapter = j.at("adapter").get<std::string>();
  s.transform = j.at("transform").get<std::string>();
  s.ok = j.at("ok").get<bool>();
  s.stage = j.value("stage", "");
  s.message = j.value("message", "");
  s.location = j.value("location", "");
  s.diagnostics = j.value("diagnostics", "");
  return s;
}

std::string warning_file(const Warning& w) {
  return std::string(kind_name(w.kind)) + "_" + std::to_string(w.id) + ".json";
}

std::string reduced_file(std::size_t id) { return "reduced_" + std::to_string(id) + ".qasm"; }

fs::path provenance_rel(const std::string& class_id) { return fs::path("classes") / class_id / "provenance.json"; }

void persist_class(const fs::path& out, const EquivalenceClass& cls) {
  const fs::path prog_dir = fs::path("programs") / cls.class_id;
  const fs::path class_dir = fs::path("classes") / cls.class_id;
  json j;
  j["class_id"] = cls.class_id;
  j["stream_index"] = cls.stream_index;
  j["mode"] = mode_name(cls.initial.mode);
  j["seed"] = cls.initial.seed;
  j["adapter_used"] = cls.initial.adapter_used ? json(*cls.initial.adapter_used) : json(nullptr);
  if (cls.initial.source_qasm) {
    write_once(out / prog_dir / "0_source.qasm", *cls.initial.source_qasm);
    j["source_path"] = (prog_dir / "0_source.qasm").string();
  }
  if (!cls.members.empty()) {
    write_once(out / prog_dir / "0_seed.qasm", cls.initial.qasm);
    j["seed_path"] = (prog_dir / "0_seed.qasm").string();
  }
  json members = json::array();
  for (const auto& m : cls.members) {
    const fs::path rel = class_dir / ("step_" + std::to_string(m.step) + ".qasm");
    write_once(out / rel, m.qasm);
    members.push_back({{"step", m.step}, {"path", rel.string()}});
  }
  j["members"] = members;
  json steps = json::array();
  for (const auto& s : cls.provenance) steps.push_back(step_to_json(s));
  j["steps"] = steps;
  write_once(out / class_dir / "provenance.json", j.dump(2) + "\n");
}

std::string metrics_csv(const std::vector<ProgramMetrics>& metrics) {
  std::ostringstream s;
  s << "class_id,step,total_gates,unique_gates,entropy2,entropy3\n";
  for (const auto& m : metrics) {
    s << m.class_id << ',' << m.step << ',' << m.total_gates << ',' << m.unique_gates << ','
      << format_double(m.entropy2) << ',' << format_double(m.entropy3) << '\n';
  }
  return s.str();
}

json clusters_json(const std::vector<Cluster>& clusters) {
  json arr = json::array();
  for (const auto& c : clusters) {
    arr.push_back({{"key", c.key}, {"members", c.members}, {"representative", c.representative}});
  }
  return arr;
}

/// Runs fn(index, worker) for index in [0, n) over `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i, w);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

struct ClassOutcome {
  EquivalenceClass cls;
  std::vector<Warning> warnings;
  std::vector<ProgramMetrics> metrics;
  StageTimes times;
  std::size_t pairs_checked = 0;
  std::size_t undecided = 0;
};

void ensure_fresh(const fs::path& dir) {
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_empty(dir, ec)) {
    throw IoError("output directory '" + dir.string() + "' is not empty");
  }
}

}  // namespace

json warning_to_json(const Warning& w) {
  json j{{"id", w.id},
         {"kind", std::string(kind_name(w.kind))},
         {"message", w.message},
         {"stage", w.stage},
         {"location", w.location},
         {"class_id", w.class_id},
         {"step", w.step},
         {"adapter", w.adapter},
         {"transform", w.transform},
         {"provenance_path", w.provenance_path}};
  j["pair"] = w.pair ? json{{"i", w.pair->i}, {"j", w.pair->j}, {"diff", w.pair->diff}} : json(nullptr);
  if (!w.reduced_path.empty()) j["reduced_path"] = w.reduced_path;
  return j;
}

Warning warning_from_json(const json& j) {
  Warning w;
  try {
    w.id = j.at("id").get<std::size_t>();
    w.kind = j.at("kind").get<std::string>() == "crash" ? Warning::Kind::Crash : Warning::Kind::Inequivalence;
    w.message = j.at("message").get<std::string>();
    w.stage = j.value("stage", "");
    w.location = j.value("location", "");
    w.class_id = j.at("class_id").get<std::string>();
    w.step = j.value("step", std::size_t{0});
    w.adapter = j.value("adapter", "");
    w.transform = j.value("transform", "");
    w.provenance_path = j.value("provenance_path", "");
    w.reduced_path = j.value("reduced_path", "");
    if (j.contains("pair") && j["pair"].is_object()) {
      w.pair = SelectedPair{j["pair"].at("i").get<std::size_t>(), j["pair"].at("j").get<std::size_t>(),
                            j["pair"].at("diff").get<std::size_t>()};
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed warning record: ") + e.what());
  }
  return w;
}

CampaignResult run_campaign(const CampaignConfig& config_in, bool persist) {
  CampaignConfig config = config_in;
  config.sync_seed();
  validate_campaign(config);
  if (persist) ensure_fresh(config.out_dir);

  const auto specs = resolve_specs(config.ite.adapters, config.extra_adapters);
  std::vector<std::unique_ptr<AdapterSet>> sets;
  for (std::size_t w = 0; w < std::max<std::size_t>(1, config.workers); ++w) {
    sets.push_back(std::make_unique<AdapterSet>(specs));
  }

  const std::size_t n = config.ite.max_classes;
  std::vector<ClassOutcome> outcomes(n);
  parallel_for(n, config.workers, [&](std::size_t i, std::size_t w) {
    ClassOutcome& o = outcomes[i];
    o.cls = build_class(config.gen, config.ite, *sets[w], i, &o.times);
    for (const auto& m : o.cls.members) {
      if (auto pm = program_metrics(m.qasm, o.cls.class_id, m.step)) o.metrics.push_back(*pm);
    }
    const auto start = std::chrono::steady_clock::now();
    if (auto cw = crash_warning(o.cls)) o.warnings.push_back(*cw);
    if (config.oracle.enabled) {
      auto vet = vet_class(o.cls, config.oracle.k, config.oracle.tolerance, config.oracle.max_oracle_qubits);
      o.pairs_checked = vet.pairs_checked;
      o.undecided = vet.undecided;
      for (auto& w2 : vet.warnings) o.warnings.push_back(std::move(w2));
    }
    o.times.detection += std::chrono::steady_clock::now() - start;
  });

  CampaignResult r;
  for (auto& o : outcomes) {
    r.times += o.times;
    r.counts.pairs_checked += o.pairs_checked;
    r.counts.undecided += o.undecided;
    for (auto& w : o.warnings) {
      w.id = r.warnings.size();
      w.provenance_path = provenance_rel(w.class_id).string();
      r.warnings.push_back(std::move(w));
    }
    for (auto& m : o.metrics) r.metrics.push_back(std::move(m));
    r.classes.push_back(std::move(o.cls));
  }

  const auto detect_start = std::chrono::steady_clock::now();
  r.clusters = cluster_warnings(r.warnings);
  if (config.triage.reduce) {
    std::vector<std::size_t> reps;
    for (const auto& c : r.clusters) reps.push_back(c.representative);
    parallel_for(reps.size(), config.workers, [&](std::size_t i, std::size_t w) {
      Warning& warn = r.warnings[reps[i]];
      const auto& cls = r.classes[std::stoul(warn.class_id.substr(1))];
      const auto ctx = replay_context(cls, warn, config.oracle.tolerance, config.oracle.max_oracle_qubits);
      try {
        const QasmProgram reduced = ddmin(parse(ctx.start), make_signal(ctx, *sets[w]));
        warn.reduced_qasm = print(reduced);
        warn.reduced_path = (fs::path("warnings") / reduced_file(warn.id)).string();
      } catch (const SignalNotReproducible&) {
      } catch (const ParseError&) {
      }
    });
  }
  r.times.detection += std::chrono::steady_clock::now() - detect_start;

  r.counts.programs = n;
  r.counts.classes = r.classes.size();
  for (const auto& c : r.classes) r.counts.members += c.members.size();
  for (const auto& w : r.warnings) {
    if (w.kind == Warning::Kind::Crash) ++r.counts.crashes;
    else ++r.counts.inequivalences;
  }
  r.counts.clusters = r.clusters.size();
  r.fractions = timing_report(r.times);

  if (persist) {
    const fs::path& out = config.out_dir;
    for (const auto& c : r.classes) persist_class(out, c);
    for (const auto& w : r.warnings) {
      write_once(out / "warnings" / warning_file(w), warning_to_json(w).dump(2) + "\n");
      if (w.reduced_qasm) write_once(out / w.reduced_path, *w.reduced_qasm);
    }
    write_once(out / "clusters.json", clusters_json(r.clusters).dump(2) + "\n");
    write_once(out / "metrics.csv", metrics_csv(r.metrics));
    write_once(out / "report.json", report_json(config, r).dump(2) + "\n");
  }
  return r;
}

json report_json(const CampaignConfig& config, const CampaignResult& r) {
  json j;
  j["tool"] = "crossqasm";
  j["version"] = kVersion;
  j["seed"] = config.seed;
  j["config"] = config_to_json(config);
  j["counts"] = {{"programs", r.counts.programs},     {"classes", r.counts.classes},
                 {"members", r.counts.members},       {"crashes", r.counts.crashes},
                 {"inequivalences", r.counts.inequivalences}, {"undecided", r.counts.undecided},
                 {"clusters", r.counts.clusters},     {"pairs_checked", r.counts.pairs_checked}};
  j["timing"] = {
      {"components", {{"generator", r.fractions.generator}, {"ite", r.fractions.ite},
                      {"detection", r.fractions.detection}}},
      {"ite_stages", {{"import", r.fractions.import}, {"transform", r.fractions.transform},
                      {"export", r.fractions.export_}}},
      {"seconds", {{"generator", r.times.generator.count()}, {"import", r.times.import.count()},
                   {"transform", r.times.transform.count()}, {"export", r.times.export_.count()},
                   {"detection", r.times.detection.count()}}}};
  return j;
}

std::size_t generate_programs(const CampaignConfig& config_in, std::size_t count, std::ostream& log) {
  CampaignConfig config = config_in;
  config.sync_seed();
  validate_campaign(config);
  AdapterSet adapters(resolve_specs(config.ite.adapters, config.extra_adapters));
  std::size_t written = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const fs::path dir = config.out_dir / "programs" / class_id_for(i);
    if (choose_mode(config.gen, i) == GenMode::Direct) {
      write_once(dir / "0_seed.qasm", generate_direct(config.gen, i).qasm);
      ++written;
      continue;
    }
    Rng pick(derive_seed(config.gen.seed, i, "gen-adapter"));
    const std::string& id = config.ite.adapters[pick.index(config.ite.adapters.size())];
    const std::string source = representation_source(config.gen, i);
    write_once(dir / "0_source.qasm", source);
    try {
      write_once(dir / "0_seed.qasm", export_source(source, adapters.get(id)));
      ++written;
    } catch (const AdapterFailure& f) {
      log << class_id_for(i) << ": " << f.stage() << " via " << id << ": " << f.message() << "\n";
    }
  }
  return written;
}

std::vector<EquivalenceClass> load_classes(const fs::path& dir) {
  std::vector<EquivalenceClass> out;
  const fs::path classes = dir / "classes";
  std::error_code ec;
  if (!fs::is_directory(classes, ec)) return out;
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(classes)) {
    if (e.is_directory()) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) {
    const json j = load_json(d / "provenance.json");
    EquivalenceClass c;
    try {
      c.class_id = j.at("class_id").get<std::string>();
      c.stream_index = j.at("stream_index").get<std::size_t>();
      c.initial.mode = j.at("mode").get<std::string>() == "direct" ? GenMode::Direct : GenMode::Representation;
      c.initial.seed = j.at("seed").get<std::uint64_t>();
      c.initial.stream_index = c.stream_index;
      if (j.contains("adapter_used") && j["adapter_used"].is_string()) {
        c.initial.adapter_used = j["adapter_used"].get<std::string>();
      }
      if (j.contains("source_path")) c.initial.source_qasm = read_file(dir / j["source_path"].get<std::string>());
      if (j.contains("seed_path")) c.initial.qasm = read_file(dir / j["seed_path"].get<std::string>());
      for (const auto& m : j.at("members")) {
        c.members.push_back({read_file(dir / m.at("path").get<std::string>()), m.at("step").get<std::size_t>()});
      }
      for (const auto& s : j.at("steps")) c.provenance.push_back(step_from_json(s));
    } catch (const json::exception& e) {
      throw IoError("malformed '" + (d / "provenance.json").string() + "': " + e.what());
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Warning> load_warnings(const fs::path& dir) {
  std::vector<Warning> out;
  const fs::path wdir = dir / "warnings";
  std::error_code ec;
  if (!fs::is_directory(wdir, ec)) return out;
  for (const auto& e : fs::directory_iterator(wdir)) {
    if (e.path().extension() == ".json") out.push_back(warning_from_json(load_json(e.path())));
  }
  std::sort(out.begin(), out.end(), [](const Warning& a, const Warning& b) { return a.id < b.id; });
  return out;
}

VetResult check_directory(const fs::path& dir, std::size_t k, double tolerance, std::size_t max_qubits) {
  std::error_code ec;
  if (!fs::is_directory(dir / "classes", ec)) {
    throw ConfigError("'" + dir.string() + "' does not contain a campaign");
  }
  const auto classes = load_classes(dir);
  VetResult r = vet_classes(classes, k, tolerance, max_qubits);
  json j;
  j["k"] = k;
  j["tolerance"] = tolerance;
  j["pairs_checked"] = r.pairs_checked;
  j["undecided"] = r.undecided;
  json ws = json::array();
  for (const auto& w : r.warnings) {
    json e{{"kind", std::string(kind_name(w.kind))}, {"message", w.message}, {"class_id", w.class_id},
           {"step", w.step}};
    e["pair"] = w.pair ? json{{"i", w.pair->i}, {"j", w.pair->j}, {"diff", w.pair->diff}} : json(nullptr);
    ws.push_back(e);
  }
  j["warnings"] = ws;
  std::ostringstream name;
  name << "check_k" << k << "_tol" << format_double(tolerance) << ".json";
  write_once(dir / name.str(), j.dump(2) + "\n");
  return r;
}

QasmProgram reduce_warning(const fs::path& dir, std::size_t id) {
  const fs::path report = dir / "report.json";
  std::error_code ec;
  if (!fs::exists(report, ec)) throw ConfigError("'" + dir.string() + "' does not contain a campaign");
  const CampaignConfig config = config_from_json(load_json(report).at("config"));
  const auto warnings = load_warnings(dir);
  auto w = std::find_if(warnings.begin(), warnings.end(), [&](const Warning& x) { return x.id == id; });
  if (w == warnings.end()) throw ConfigError("no warning with id " + std::to_string(id));
  const auto classes = load_classes(dir);
  auto cls = std::find_if(classes.begin(), classes.end(),
                          [&](const EquivalenceClass& c) { return c.class_id == w->class_id; });
  if (cls == classes.end()) throw IoError("class '" + w->class_id + "' is missing");
  AdapterSet adapters(resolve_specs(config.ite.adapters, config.extra_adapters));
  const auto ctx = replay_context(*cls, *w, config.oracle.tolerance, config.oracle.max_oracle_qubits);
  const QasmProgram reduced = ddmin(parse(ctx.start), make_signal(ctx, adapters));
  write_once(dir / "warnings" / reduced_file(id), print(reduced));
  return reduced;
}

json load_report(const fs::path& dir) {
  const fs::path report = dir / "report.json";
  std::error_code ec;
  if (!fs::is_directory(dir, ec) || !fs::exists(report, ec)) {
    throw ConfigError("'" + dir.string() + "' does not contain a campaign report");
  }
  json j = load_json(report);
  std::size_t classes = 0, members = 0, crashes = 0, inequivalences = 0;
  for (const auto& c : load_classes(dir)) {
    ++classes;
    members += c.members.size();
  }
  for (const auto& w : load_warnings(dir)) {
    if (w.kind == Warning::Kind::Crash) ++crashes;
    else ++inequivalences;
  }
  j["on_disk"] = {{"classes", classes}, {"members", members}, {"crashes", crashes},
                  {"inequivalences", inequivalences}};
  return j;
}

}  // namespace crossqasm
