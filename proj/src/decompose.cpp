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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crossqasm/passes.hpp"

namespace crossqasm {
namespace {

constexpr double kPi = std::numbers::pi;

GateApp g1(GateKind k, std::size_t q, std::vector<double> params = {}) {
  return GateApp{k, std::move(params), {q}, std::nullopt};
}

GateApp cx(std::size_t c, std::size_t t) { return GateApp{GateKind::CX, {}, {c, t}, std::nullopt}; }

void append(std::vector<GateApp>& out, std::vector<GateApp> more) {
  for (auto& op : more) out.push_back(std::move(op));
}

/// Controlled-U via U = e^{ia} A X B X C with ABC = I.
std::vector<GateApp> controlled_u(const Mat2& u, std::size_t c, std::size_t t) {
  const auto e = euler_zyz(u);
  const double beta = e.phi, gamma = e.theta, delta = e.lambda;
  std::vector<GateApp> out;
  out.push_back(g1(GateKind::RZ, t, {(delta - beta) / 2}));
  out.push_back(cx(c, t));
  out.push_back(g1(GateKind::RZ, t, {-(delta + beta) / 2}));
  out.push_back(g1(GateKind::RY, t, {-gamma / 2}));
  out.push_back(cx(c, t));
  out.push_back(g1(GateKind::RY, t, {gamma / 2}));
  out.push_back(g1(GateKind::RZ, t, {beta}));
  out.push_back(g1(GateKind::P, c, {e.phase}));
  return out;
}

/// Multi-controlled Z over `qubits` (all symmetric) as a phase polynomial:
/// pi * x_0 x_1 ... x_{k-1} = sum over non-empty subsets S of
/// (-1)^{|S|+1} pi / 2^{k-1} * parity(S).
std::vector<GateApp> multi_controlled_z(const std::vector<std::size_t>& qubits) {
  const std::size_t k = qubits.size();
  const double unit = kPi / static_cast<double>(std::size_t{1} << (k - 1));
  std::vector<GateApp> out;
  for (std::size_t subset = 1; subset < (std::size_t{1} << k); ++subset) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < k; ++i) {
      if (subset & (std::size_t{1} << i)) members.push_back(qubits[i]);
    }
    const std::size_t target = members.back();
    for (std::size_t i = 0; i + 1 < members.size(); ++i) out.push_back(cx(members[i], target));
    const double sign = members.size() % 2 == 1 ? 1.0 : -1.0;
    out.push_back(g1(GateKind::P, target, {sign * unit}));
    for (std::size_t i = members.size() - 1; i-- > 0;) out.push_back(cx(members[i], target));
  }
  return out;
}

std::vector<GateApp> multi_controlled_x(const std::vector<std::size_t>& qubits) {
  const std::size_t t = qubits.back();
  std::vector<GateApp> out;
  out.push_back(g1(GateKind::H, t));
  append(out, multi_controlled_z(qubits));
  out.push_back(g1(GateKind::H, t));
  return out;
}

std::vector<GateApp> toffoli(std::size_t a, std::size_t b, std::size_t c) {
  return {g1(GateKind::H, c),   cx(b, c), g1(GateKind::Tdg, c), cx(a, c),
          g1(GateKind::T, c),   cx(b, c), g1(GateKind::Tdg, c), cx(a, c),
          g1(GateKind::T, b),   g1(GateKind::T, c), g1(GateKind::H, c), cx(a, b),
          g1(GateKind::T, a),   g1(GateKind::Tdg, b), cx(a, b)};
}

GateApp u3(std::size_t q, double theta, double phi, double lambda) {
  return g1(GateKind::U3, q, {theta, phi, lambda});
}

/// Fixed single-qubit table into u3.
GateApp single_to_u3(const GateApp& op) {
  const auto q = op.qubits[0];
  const auto& p = op.params;
  switch (op.kind) {
    case GateKind::H: return u3(q, kPi / 2, 0, kPi);
    case GateKind::X: return u3(q, kPi, 0, kPi);
    case GateKind::Y: return u3(q, kPi, kPi / 2, kPi / 2);
    case GateKind::Z: return u3(q, 0, 0, kPi);
    case GateKind::S: return u3(q, 0, 0, kPi / 2);
    case GateKind::Sdg: return u3(q, 0, 0, -kPi / 2);
    case GateKind::T: return u3(q, 0, 0, kPi / 4);
    case GateKind::Tdg: return u3(q, 0, 0, -kPi / 4);
    case GateKind::SX: return u3(q, kPi / 2, -kPi / 2, kPi / 2);
    case GateKind::RX: return u3(q, p[0], -kPi / 2, kPi / 2);
    case GateKind::RY: return u3(q, p[0], 0, 0);
    case GateKind::RZ:
    case GateKind::P:
    case GateKind::U1: return u3(q, 0, 0, p[0]);
    case GateKind::U2: return u3(q, kPi / 2, p[0], p[1]);
    case GateKind::U3: return u3(q, p[0], p[1], p[2]);
    default: break;
  }
  throw std::logic_error("not a single-qubit gate");
}

}  // namespace

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 single_qubit_matrix(const GateApp& op) {
  const auto m = gate_matrix(op.kind, op.params);
  if (m.size() != 4) throw std::logic_error("not a single-qubit gate");
  return {m[0], m[1], m[2], m[3]};
}

EulerAngles euler_zyz(const Mat2& u) {
  const Complex det = u[0] * u[3] - u[1] * u[2];
  const double alpha = std::arg(det) / 2;
  const Complex unphase = std::exp(Complex{0.0, -alpha});
  const Complex v00 = u[0] * unphase, v10 = u[2] * unphase, v11 = u[3] * unphase;
  EulerAngles e;
  e.theta = 2 * std::atan2(std::abs(v10), std::abs(v00));
  const double sum = 2 * std::arg(v11);
  const double diff = 2 * std::arg(v10);
  e.phi = (sum + diff) / 2;
  e.lambda = (sum - diff) / 2;
  // u3 carries e^{i(phi+lambda)/2} relative to Rz Ry Rz.
  e.phase = alpha;
  return e;
}

std::vector<GateApp> decompose_to_cx(const GateApp& op) {
  const auto& q = op.qubits;
  const auto& p = op.params;
  switch (op.kind) {
    case GateKind::Id:
    case GateKind::Barrier: return {};
    case GateKind::CY: return {g1(GateKind::Sdg, q[1]), cx(q[0], q[1]), g1(GateKind::S, q[1])};
    case GateKind::CZ: return {g1(GateKind::H, q[1]), cx(q[0], q[1]), g1(GateKind::H, q[1])};
    case GateKind::CH: return controlled_u(single_qubit_matrix(g1(GateKind::H, 0)), q[0], q[1]);
    case GateKind::Swap: return {cx(q[0], q[1]), cx(q[1], q[0]), cx(q[0], q[1])};
    case GateKind::CRX:
      return controlled_u(single_qubit_matrix(g1(GateKind::RX, 0, {p[0]})), q[0], q[1]);
    case GateKind::CRY:
      return {g1(GateKind::RY, q[1], {p[0] / 2}), cx(q[0], q[1]),
              g1(GateKind::RY, q[1], {-p[0] / 2}), cx(q[0], q[1])};
    case GateKind::CRZ:
      return {g1(GateKind::RZ, q[1], {p[0] / 2}), cx(q[0], q[1]),
              g1(GateKind::RZ, q[1], {-p[0] / 2}), cx(q[0], q[1])};
    case GateKind::CP:
      return {g1(GateKind::P, q[0], {p[0] / 2}), cx(q[0], q[1]),
              g1(GateKind::P, q[1], {-p[0] / 2}), cx(q[0], q[1]),
              g1(GateKind::P, q[1], {p[0] / 2})};
    case GateKind::CU: {
      auto m = single_qubit_matrix(g1(GateKind::U3, 0, {p[0], p[1], p[2]}));
      for (auto& e : m) e *= std::exp(Complex{0.0, p[3]});
      return controlled_u(m, q[0], q[1]);
    }
    case GateKind::RXX:
      return {g1(GateKind::H, q[0]), g1(GateKind::H, q[1]), cx(q[0], q[1]),
              g1(GateKind::RZ, q[1], {p[0]}), cx(q[0], q[1]), g1(GateKind::H, q[0]),
              g1(GateKind::H, q[1])};
    case GateKind::CCX: return toffoli(q[0], q[1], q[2]);
    case GateKind::CSwap: {
      std::vector<GateApp> out{cx(q[2], q[1])};
      append(out, toffoli(q[0], q[1], q[2]));
      out.push_back(cx(q[2], q[1]));
      return out;
    }
    case GateKind::C3X:
    case GateKind::C4X: return multi_controlled_x(q);
    default: {
      GateApp copy = op;
      copy.composite.reset();
      return {copy};
    }
  }
}

std::vector<GateApp> decompose_u3cx(const GateApp& op) {
  std::vector<GateApp> out;
  for (auto& e : decompose_to_cx(op)) {
    out.push_back(e.kind == GateKind::CX ? e : single_to_u3(e));
  }
  return out;
}

std::vector<GateApp> decompose_rzsxxcx(const GateApp& op) {
  switch (op.kind) {
    case GateKind::RZ: case GateKind::SX: case GateKind::X: case GateKind::CX: {
      GateApp copy = op;
      copy.composite.reset();
      return {copy};
    }
    default: break;
  }
  if (gate_info(op.kind).num_qubits != 1 || op.kind == GateKind::Id) {
    std::vector<GateApp> out;
    for (const auto& e : decompose_to_cx(op)) append(out, decompose_rzsxxcx(e));
    return out;
  }
  const auto q = op.qubits[0];
  const auto m = single_qubit_matrix(op);
  const auto e = euler_zyz(m);
  // Diagonal gates collapse to one rz.
  if (m[1] == Complex{0.0, 0.0} && m[2] == Complex{0.0, 0.0}) {
    return {g1(GateKind::RZ, q, {std::arg(m[3]) - std::arg(m[0])})};
  }
  // u3(t, f, l) = rz(f + pi) sx rz(t + pi) sx rz(l) up to global phase.
  return {g1(GateKind::RZ, q, {e.lambda}), g1(GateKind::SX, q),
          g1(GateKind::RZ, q, {e.theta + kPi}), g1(GateKind::SX, q),
          g1(GateKind::RZ, q, {e.phi + kPi})};
}

}  // namespace crossqasm
