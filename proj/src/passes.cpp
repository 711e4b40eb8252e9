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

#include "crossqasm/passes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace crossqasm::passes {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool same_operands(const GateApp& a, const GateApp& b) {
  if (a.qubits == b.qubits) return true;
  return a.kind == b.kind && is_symmetric_two_qubit(a.kind) && a.qubits.size() == 2 &&
         b.qubits.size() == 2 && a.qubits[0] == b.qubits[1] && a.qubits[1] == b.qubits[0];
}

bool cancels(const GateApp& a, const GateApp& b, bool with_rotations) {
  if (!same_operands(a, b)) return false;
  if (a.kind == b.kind && is_self_inverse(a.kind)) return true;
  if (auto inv = named_inverse(a.kind); inv && *inv == b.kind) return true;
  if (with_rotations && a.kind == b.kind && is_additive_rotation(a.kind)) {
    return a.params[0] + b.params[0] == 0.0;
  }
  return false;
}

std::vector<GateApp> survivors(const std::vector<GateApp>& ops, const std::vector<bool>& removed) {
  std::vector<GateApp> out;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (!removed[i]) out.push_back(ops[i]);
  }
  return out;
}

/// For each op, the index of the next op touching each of its qubits.
std::vector<std::vector<std::size_t>> next_on_qubits(const Circuit& c, const std::vector<GateApp>& ops) {
  std::vector<std::vector<std::size_t>> next(ops.size());
  std::vector<std::size_t> upcoming(c.num_qubits, kNone);
  for (std::size_t i = ops.size(); i-- > 0;) {
    next[i].resize(ops[i].qubits.size());
    for (std::size_t j = 0; j < ops[i].qubits.size(); ++j) {
      next[i][j] = upcoming[ops[i].qubits[j]];
    }
    for (auto q : ops[i].qubits) upcoming[q] = i;
  }
  return next;
}

/// Stack-based sweep shared by the adapter-B passes. `combine` sees the
/// current top op and the incoming op; it may rewrite the top in place and
/// returns what happened.
enum class Combine { Keep, Absorbed, Annihilated };

template <typename Fn>
std::vector<GateApp> stack_sweep(const Circuit& c, Fn&& combine) {
  std::vector<GateApp> out;
  std::vector<bool> removed;
  std::vector<std::vector<std::size_t>> stacks(c.num_qubits);
  for (const auto& op : c.ops) {
    if (op.kind == GateKind::Barrier || op.qubits.empty()) {
      out.push_back(op);
      removed.push_back(false);
      continue;
    }
    const auto& s0 = stacks[op.qubits[0]];
    std::size_t top = s0.empty() ? kNone : s0.back();
    if (top != kNone) {
      // The top must be the latest op on every qubit of the incoming one and
      // act on exactly the same qubit set.
      bool adjacent = out[top].qubits.size() == op.qubits.size();
      for (auto q : op.qubits) {
        adjacent = adjacent && !stacks[q].empty() && stacks[q].back() == top;
      }
      if (adjacent) {
        const Combine r = combine(out[top], op);
        if (r == Combine::Absorbed) continue;
        if (r == Combine::Annihilated) {
          removed[top] = true;
          for (auto q : out[top].qubits) stacks[q].pop_back();
          continue;
        }
      }
    }
    out.push_back(op);
    removed.push_back(false);
    for (auto q : op.qubits) stacks[q].push_back(out.size() - 1);
  }
  return survivors(out, removed);
}

}  // namespace

Circuit remove_redundancies(const Circuit& c) {
  std::vector<GateApp> ops;
  for (const auto& op : c.ops) {
    if (op.kind != GateKind::Id) ops.push_back(op);
  }
  for (bool changed = true; changed;) {
    changed = false;
    const auto next = next_on_qubits(c, ops);
    std::vector<bool> removed(ops.size(), false);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (removed[i] || ops[i].kind == GateKind::Barrier || ops[i].qubits.empty()) continue;
      const std::size_t j = next[i][0];
      if (j == kNone || removed[j]) continue;
      if (!std::all_of(next[i].begin(), next[i].end(), [j](std::size_t n) { return n == j; })) continue;
      if (ops[j].qubits.size() != ops[i].qubits.size()) continue;
      if (!cancels(ops[i], ops[j], true)) continue;
      removed[i] = removed[j] = true;
      changed = true;
    }
    if (changed) ops = survivors(ops, removed);
  }
  return c.with_ops(std::move(ops));
}

Circuit cancel_inverses(const Circuit& c) {
  return c.with_ops(stack_sweep(c, [](GateApp& top, const GateApp& op) {
    return cancels(top, op, false) ? Combine::Annihilated : Combine::Keep;
  }));
}

Circuit merge_rotations(const Circuit& c) {
  constexpr double kPeriod = 4 * std::numbers::pi;
  return c.with_ops(stack_sweep(c, [](GateApp& top, const GateApp& op) {
    if (top.kind != op.kind || !is_additive_rotation(op.kind) || !same_operands(top, op)) {
      return Combine::Keep;
    }
    double angle = top.params[0] + op.params[0];
    if (std::abs(angle) >= kPeriod) angle = std::fmod(angle, kPeriod);
    if (angle == 0.0) return Combine::Annihilated;
    top.params[0] = angle;
    top.composite.reset();
    return Combine::Absorbed;
  }));
}

Circuit fuse_single_qubit_runs(const Circuit& c) {
  const auto& ops = c.ops;
  std::vector<bool> removed(ops.size(), false);
  std::vector<std::optional<GateApp>> replacement(ops.size());
  std::vector<std::vector<std::size_t>> runs(c.num_qubits);

  auto flush = [&](std::size_t q) {
    auto& run = runs[q];
    if (run.size() >= 2) {
      Mat2 m{1.0, 0.0, 0.0, 1.0};
      for (auto i : run) m = mat2_mul(single_qubit_matrix(ops[i]), m);
      for (auto i : run) removed[i] = true;
      constexpr double eps = 1e-12;
      const bool identity = std::abs(m[1]) < eps && std::abs(m[2]) < eps &&
                            std::abs(m[0] - m[3]) < eps;
      if (!identity) {
        const auto e = euler_zyz(m);
        removed[run.back()] = false;
        replacement[run.back()] = GateApp{GateKind::U3, {e.theta, e.phi, e.lambda}, {q}, std::nullopt};
      }
    }
    run.clear();
  };

  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    if (op.kind != GateKind::Barrier && op.qubits.size() == 1) {
      runs[op.qubits[0]].push_back(i);
    } else {
      for (auto q : op.qubits) flush(q);
    }
  }
  for (std::size_t q = 0; q < c.num_qubits; ++q) flush(q);

  std::vector<GateApp> out;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (removed[i]) continue;
    out.push_back(replacement[i] ? *replacement[i] : ops[i]);
  }
  return c.with_ops(std::move(out));
}

Circuit rebase_u3cx(const Circuit& c) {
  std::vector<GateApp> out;
  for (const auto& op : c.ops) {
    for (auto& e : decompose_u3cx(op)) out.push_back(std::move(e));
  }
  return c.with_ops(std::move(out));
}

Circuit rebase_rzsxxcx(const Circuit& c) {
  std::vector<GateApp> out;
  for (const auto& op : c.ops) {
    for (auto& e : decompose_rzsxxcx(op)) out.push_back(std::move(e));
  }
  return c.with_ops(std::move(out));
}

Circuit reorder_qubit_major(const Circuit& c) {
  const auto& ops = c.ops;
  // Per-qubit program-order chains; an op is ready when it heads the chain
  // of every qubit it touches.
  std::vector<std::vector<std::size_t>> chains(c.num_qubits);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (auto q : ops[i].qubits) chains[q].push_back(i);
  }
  std::vector<std::size_t> head(c.num_qubits, 0);
  auto ready = [&](std::size_t i) {
    return std::all_of(ops[i].qubits.begin(), ops[i].qubits.end(), [&](std::size_t q) {
      return head[q] < chains[q].size() && chains[q][head[q]] == i;
    });
  };

  std::vector<GateApp> out;
  std::vector<bool> emitted(ops.size(), false);
  std::size_t earliest = 0;
  auto emit = [&](std::size_t i) {
    out.push_back(ops[i]);
    emitted[i] = true;
    for (auto q : ops[i].qubits) ++head[q];
  };
  while (out.size() < ops.size()) {
    bool progressed = false;
    for (std::size_t q = 0; q < c.num_qubits; ++q) {
      while (head[q] < chains[q].size()) {
        const std::size_t i = chains[q][head[q]];
        if (ops[i].qubits.size() != 1) break;
        emit(i);
        progressed = true;
      }
    }
    while (earliest < ops.size() && emitted[earliest]) ++earliest;
    if (earliest < ops.size() && ops[earliest].qubits.empty()) {
      emit(earliest);
      continue;
    }
    if (progressed) continue;
    for (std::size_t i = earliest; i < ops.size(); ++i) {
      if (!emitted[i] && ready(i)) {
        emit(i);
        break;
      }
    }
  }
  return c.with_ops(std::move(out));
}

}  // namespace crossqasm::passes
