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

#include "crossqasm/triage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <set>

namespace crossqasm {

std::vector<std::size_t> ddmin_indices(std::size_t n,
                                       const std::function<bool(const std::vector<std::size_t>&)>& test) {
  std::map<std::vector<std::size_t>, bool> cache;
  auto check = [&](const std::vector<std::size_t>& subset) {
    auto it = cache.find(subset);
    if (it != cache.end()) return it->second;
    const bool r = test(subset);
    cache.emplace(subset, r);
    return r;
  };

  if (check({})) return {};
  std::vector<std::size_t> current(n);
  for (std::size_t i = 0; i < n; ++i) current[i] = i;
  std::size_t granularity = 2;
  while (current.size() >= 2) {
    granularity = std::min(granularity, current.size());
    std::vector<std::vector<std::size_t>> parts(granularity);
    for (std::size_t k = 0; k < current.size(); ++k) {
      parts[k * granularity / current.size()].push_back(current[k]);
    }
    bool reduced = false;
    for (const auto& part : parts) {
      if (check(part)) {
        current = part;
        granularity = 2;
        reduced = true;
        break;
      }
    }
    if (!reduced && granularity > 2) {
      for (std::size_t skip = 0; skip < parts.size() && !reduced; ++skip) {
        std::vector<std::size_t> complement;
        for (std::size_t p = 0; p < parts.size(); ++p) {
          if (p != skip) complement.insert(complement.end(), parts[p].begin(), parts[p].end());
        }
        if (check(complement)) {
          current = std::move(complement);
          granularity = std::max<std::size_t>(granularity - 1, 2);
          reduced = true;
        }
      }
    }
    if (reduced) continue;
    if (granularity >= current.size()) break;
    granularity = std::min(granularity * 2, current.size());
  }
  return current;
}

namespace {

QasmProgram with_statements(const QasmProgram& p, const std::vector<std::size_t>& keep) {
  QasmProgram out = p;
  out.statements.clear();
  for (auto i : keep) out.statements.push_back(p.statements[i]);
  return out;
}

}  // namespace

QasmProgram ddmin(const QasmProgram& program, const Signal& signal) {
  if (!signal(program)) throw SignalNotReproducible("signal does not hold on the input program");
  const auto keep = ddmin_indices(program.statements.size(), [&](const std::vector<std::size_t>& subset) {
    return signal(with_statements(program, subset));
  });
  QasmProgram reduced = with_statements(program, keep);

  std::set<std::string> used;
  for (const auto& st : reduced.statements) used.insert(st.gate_name);
  QasmProgram pruned = reduced;
  pruned.gate_defs.clear();
  for (const auto& d : reduced.gate_defs) {
    if (used.count(d.name)) pruned.gate_defs.push_back(d);
  }
  if (pruned.gate_defs.size() != reduced.gate_defs.size() && signal(pruned)) return pruned;
  return reduced;
}

ReplayContext replay_context(const EquivalenceClass& cls, const Warning& warning, double tolerance,
                             std::size_t max_qubits) {
  ReplayContext ctx;
  ctx.warning = warning;
  ctx.tolerance = tolerance;
  ctx.max_qubits = max_qubits;
  const bool rep = cls.initial.mode == GenMode::Representation && cls.initial.source_qasm;
  ctx.start = rep ? *cls.initial.source_qasm : cls.initial.qasm;
  for (const auto& s : cls.provenance) {
    if (s.ok || warning.kind == Warning::Kind::Crash) ctx.steps.push_back(s);
  }
  return ctx;
}

Signal make_signal(const ReplayContext& ctx, AdapterSet& adapters) {
  return [ctx, &adapters](const QasmProgram& candidate) {
    const auto run = replay(print(candidate), ctx.steps, adapters);
    const Warning& w = ctx.warning;
    if (w.kind == Warning::Kind::Crash && w.stage != "oracle") {
      return run.failure && run.failure->step == w.step && run.failure->stage == w.stage &&
             run.failure->message == w.message;
    }
    if (run.failure) return false;
    if (w.kind == Warning::Kind::Crash) {
      if (w.step >= run.programs.size()) return false;
      try {
        lower(parse(run.programs[w.step]));
        return false;
      } catch (const ParseError& e) {
        return e.message() == w.message;
      } catch (const LoweringError& e) {
        return std::string(e.what()) == w.message;
      }
    }
    if (!w.pair || w.pair->j >= run.programs.size()) return false;
    try {
      const auto v = check_equivalence(parse(run.programs[w.pair->i]), parse(run.programs[w.pair->j]),
                                       ctx.tolerance, ctx.max_qubits);
      return v.verdict == Verdict::NotEquivalent;
    } catch (const std::exception&) {
      return false;
    }
  };
}

std::string normalize_message(const std::string& message) {
  static const std::regex handle(R"(\bh[0-9]+\b)");
  static const std::regex decimal(R"(-?\b[0-9]+\.[0-9]*(?:[eE][-+]?[0-9]+)?(?:\*pi\b)?)");
  static const std::regex pi_form(R"(-?(?:\b[0-9]+\*)?\bpi\b(?:/[0-9]+)?)");
  static const std::regex number(R"(\b[0-9]+\b)");
  std::string s = std::regex_replace(message, handle, "<H>");
  s = std::regex_replace(s, decimal, "<A>");
  s = std::regex_replace(s, pi_form, "<A>");
  s = std::regex_replace(s, number, "<N>");
  return s;
}

std::string cluster_key(const Warning& w) {
  if (w.kind == Warning::Kind::Inequivalence) return "inequivalence|" + w.message + "|" + w.transform;
  return "crash|" + normalize_message(w.message);
}

std::vector<Cluster> cluster_warnings(const std::vector<Warning>& warnings) {
  std::vector<Cluster> out;
  std::map<std::string, std::size_t> by_key;
  std::vector<const Warning*> sorted;
  for (const auto& w : warnings) sorted.push_back(&w);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Warning* a, const Warning* b) { return a->id < b->id; });
  for (const Warning* w : sorted) {
    const std::string key = cluster_key(*w);
    auto [it, fresh] = by_key.emplace(key, out.size());
    if (fresh) out.push_back({key, {}, w->id});
    out[it->second].members.push_back(w->id);
  }
  return out;
}

double entropy_ngrams(const std::vector<std::string>& lines, std::size_t n) {
  if (n == 0 || lines.size() < n) return 0.0;
  std::map<std::string, std::size_t> counts;
  const std::size_t total = lines.size() - n + 1;
  for (std::size_t i = 0; i < total; ++i) {
    std::string gram;
    for (std::size_t k = 0; k < n; ++k) {
      gram += lines[i + k];
      gram += '\n';
    }
    ++counts[gram];
  }
  double h = 0.0;
  for (const auto& [gram, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double entropy_ngrams(const QasmProgram& program, std::size_t n) {
  std::vector<std::string> lines;
  for (const auto& st : program.statements) lines.push_back(print_statement(st));
  return entropy_ngrams(lines, n);
}

std::optional<ProgramMetrics> program_metrics(const std::string& qasm, std::string class_id, std::size_t step) {
  try {
    const QasmProgram p = parse(qasm);
    const Circuit c = lower(p);
    ProgramMetrics m;
    m.class_id = std::move(class_id);
    m.step = step;
    m.total_gates = gate_count(c);
    m.unique_gates = unique_gate_count(c);
    m.entropy2 = entropy_ngrams(p, 2);
    m.entropy3 = entropy_ngrams(p, 3);
    return m;
  } catch (const ParseError&) {
    return std::nullopt;
  } catch (const LoweringError&) {
    return std::nullopt;
  }
}

MeanCi mean_ci(const std::vector<double>& values) {
  MeanCi r;
  if (values.empty()) return r;
  double sum = 0.0;
  for (double v : values) sum += v;
  r.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return r;
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  r.half_width = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
  return r;
}

std::vector<IterationAggregate> aggregate_by_step(const std::vector<ProgramMetrics>& metrics) {
  std::map<std::size_t, std::vector<const ProgramMetrics*>> by_step;
  for (const auto& m : metrics) by_step[m.step].push_back(&m);
  std::vector<IterationAggregate> out;
  for (const auto& [step, ms] : by_step) {
    std::vector<double> t, u, e2, e3;
    for (const auto* m : ms) {
      t.push_back(static_cast<double>(m->total_gates));
      u.push_back(static_cast<double>(m->unique_gates));
      e2.push_back(m->entropy2);
      e3.push_back(m->entropy3);
    }
    out.push_back({step, ms.size(), mean_ci(t), mean_ci(u), mean_ci(e2), mean_ci(e3)});
  }
  return out;
}

}  // namespace crossqasm
