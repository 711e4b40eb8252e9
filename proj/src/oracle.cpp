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

#include "crossqasm/oracle.hpp"

#include <algorithm>
#include <limits>

namespace crossqasm {

PairSelection select_pairs(const std::vector<std::size_t>& gate_counts, std::size_t k, std::string class_id) {
  if (gate_counts.size() < 2) throw TooFewMembers("pair selection needs at least two members");
  std::vector<SelectedPair> all;
  for (std::size_t i = 0; i < gate_counts.size(); ++i) {
    for (std::size_t j = i + 1; j < gate_counts.size(); ++j) {
      const auto a = gate_counts[i], b = gate_counts[j];
      all.push_back({i, j, a > b ? a - b : b - a});
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const SelectedPair& x, const SelectedPair& y) { return x.diff > y.diff; });
  all.resize(std::min(k, all.size()));
  return {std::move(class_id), std::move(all)};
}

EquivVerdict decide(const Unitary& a, const Unitary& b, double tolerance) {
  const auto pd = phase_distance(a, b);
  EquivVerdict v;
  v.phase = pd.phase;
  v.distance = pd.distance;
  v.verdict = pd.distance <= tolerance ? Verdict::Equivalent : Verdict::NotEquivalent;
  return v;
}

EquivVerdict check_equivalence(const Circuit& a, const Circuit& b, double tolerance, std::size_t max_qubits) {
  EquivVerdict v;
  if (a.num_qubits != b.num_qubits) {
    v.verdict = Verdict::NotEquivalent;
    v.reason = "width mismatch";
    v.distance = std::numeric_limits<double>::infinity();
    return v;
  }
  if (a.num_qubits > max_qubits) {
    v.reason = "too_large";
    return v;
  }
  return decide(unitary_of(a, max_qubits), unitary_of(b, max_qubits), tolerance);
}

namespace {

/// Re-indexes `c` into a layout where register r has size `sizes[r]`.
Circuit widen(const Circuit& c, const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> new_base, old_base;
  std::size_t nb = 0, ob = 0;
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    new_base.push_back(nb);
    old_base.push_back(ob);
    nb += sizes[r];
    ob += c.qregs[r].size;
  }
  auto map = [&](std::size_t q) {
    std::size_t r = 0;
    while (r + 1 < old_base.size() && q >= old_base[r + 1]) ++r;
    return new_base[r] + (q - old_base[r]);
  };
  Circuit out = c;
  out.num_qubits = nb;
  for (std::size_t r = 0; r < sizes.size(); ++r) out.qregs[r].size = sizes[r];
  for (auto& op : out.ops) {
    for (auto& q : op.qubits) q = map(q);
  }
  return out;
}

}  // namespace

EquivVerdict check_equivalence(const QasmProgram& a, const QasmProgram& b, double tolerance,
                               std::size_t max_qubits) {
  Circuit ca = lower(a), cb = lower(b);
  if (ca.num_qubits != cb.num_qubits && ca.qregs.size() == cb.qregs.size()) {
    bool same_names = true;
    std::vector<std::size_t> sizes;
    for (std::size_t r = 0; r < ca.qregs.size(); ++r) {
      same_names = same_names && ca.qregs[r].name == cb.qregs[r].name;
      sizes.push_back(std::max(ca.qregs[r].size, cb.qregs[r].size));
    }
    if (same_names) {
      ca = widen(ca, sizes);
      cb = widen(cb, sizes);
    }
  }
  return check_equivalence(ca, cb, tolerance, max_qubits);
}

std::string_view kind_name(Warning::Kind kind) {
  return kind == Warning::Kind::Crash ? "crash" : "inequivalence";
}

std::optional<Warning> crash_warning(const EquivalenceClass& cls) {
  const IteStep* s = cls.crash();
  if (!s) return std::nullopt;
  Warning w;
  w.kind = Warning::Kind::Crash;
  w.message = s->message;
  w.stage = s->stage;
  w.location = s->location;
  w.class_id = cls.class_id;
  w.step = s->step;
  w.adapter = s->adapter;
  w.transform = s->transform;
  return w;
}

VetResult vet_class(const EquivalenceClass& cls, std::size_t k, double tolerance, std::size_t max_qubits) {
  VetResult r;
  if (cls.members.size() < 2) return r;

  std::vector<std::size_t> index;  // usable member indices
  std::vector<Circuit> circuits;
  std::vector<std::size_t> counts;
  for (std::size_t m = 0; m < cls.members.size(); ++m) {
    try {
      circuits.push_back(lower(parse(cls.members[m].qasm)));
    } catch (const ParseError& e) {
      Warning w;
      w.kind = Warning::Kind::Crash;
      w.message = e.message();
      w.stage = "oracle";
      w.location = std::to_string(e.position().line) + ":" + std::to_string(e.position().column);
      w.class_id = cls.class_id;
      w.step = cls.members[m].step;
      r.warnings.push_back(std::move(w));
      continue;
    } catch (const LoweringError& e) {
      Warning w;
      w.kind = Warning::Kind::Crash;
      w.message = e.what();
      w.stage = "oracle";
      w.class_id = cls.class_id;
      w.step = cls.members[m].step;
      r.warnings.push_back(std::move(w));
      continue;
    }
    index.push_back(m);
    counts.push_back(gate_count(circuits.back()));
  }
  if (index.size() < 2) return r;

  // The last ITE step names the transform for clustering.
  std::string last_adapter, last_transform;
  for (const auto& s : cls.provenance) {
    if (s.ok && s.step > 0) {
      last_adapter = s.adapter;
      last_transform = s.transform;
    }
  }

  const auto sel = select_pairs(counts, k, cls.class_id);
  for (const auto& p : sel.pairs) {
    ++r.pairs_checked;
    EquivVerdict v;
    const Circuit& a = circuits[p.i];
    const Circuit& b = circuits[p.j];
    if (a.num_qubits != b.num_qubits) {
      // Pad through the program-level path.
      v = check_equivalence(parse(cls.members[index[p.i]].qasm), parse(cls.members[index[p.j]].qasm),
                            tolerance, max_qubits);
    } else {
      v = check_equivalence(a, b, tolerance, max_qubits);
    }
    if (v.verdict == Verdict::Undecided) {
      ++r.undecided;
    } else if (v.verdict == Verdict::NotEquivalent) {
      Warning w;
      w.kind = Warning::Kind::Inequivalence;
      w.message = kNotEquivalent;
      w.stage = "oracle";
      w.class_id = cls.class_id;
      w.step = cls.members.back().step;
      w.adapter = last_adapter;
      w.transform = last_transform;
      w.pair = SelectedPair{index[p.i], index[p.j], p.diff};
      r.warnings.push_back(std::move(w));
    }
  }
  return r;
}

VetResult vet_classes(const std::vector<EquivalenceClass>& classes, std::size_t k, double tolerance,
                      std::size_t max_qubits) {
  VetResult all;
  for (const auto& c : classes) {
    auto r = vet_class(c, k, tolerance, max_qubits);
    all.pairs_checked += r.pairs_checked;
    all.undecided += r.undecided;
    for (auto& w : r.warnings) all.warnings.push_back(std::move(w));
  }
  return all;
}

}  // namespace crossqasm
