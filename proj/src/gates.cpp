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

#include "crossqasm/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crossqasm {
namespace {

constexpr std::array<GateInfo, kGateKindCount> kGates{{
    {GateKind::H, "h", 1, 0},       {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},       {GateKind::Z, "z", 1, 0},
    {GateKind::S, "s", 1, 0},       {GateKind::Sdg, "sdg", 1, 0},
    {GateKind::T, "t", 1, 0},       {GateKind::Tdg, "tdg", 1, 0},
    {GateKind::SX, "sx", 1, 0},     {GateKind::RX, "rx", 1, 1},
    {GateKind::RY, "ry", 1, 1},     {GateKind::RZ, "rz", 1, 1},
    {GateKind::P, "p", 1, 1},       {GateKind::U1, "u1", 1, 1},
    {GateKind::U2, "u2", 1, 2},     {GateKind::U3, "u3", 1, 3},
    {GateKind::CX, "cx", 2, 0},     {GateKind::CY, "cy", 2, 0},
    {GateKind::CZ, "cz", 2, 0},     {GateKind::CH, "ch", 2, 0},
    {GateKind::Swap, "swap", 2, 0}, {GateKind::CRX, "crx", 2, 1},
    {GateKind::CRY, "cry", 2, 1},   {GateKind::CRZ, "crz", 2, 1},
    {GateKind::CP, "cp", 2, 1},     {GateKind::CU, "cu", 2, 4},
    {GateKind::RXX, "rxx", 2, 1},   {GateKind::CCX, "ccx", 3, 0},
    {GateKind::C3X, "c3x", 4, 0},   {GateKind::C4X, "c4x", 5, 0},
    {GateKind::CSwap, "cswap", 3, 0}, {GateKind::Id, "id", 1, 0},
    {GateKind::Barrier, "barrier", 0, 0},
}};

using Mat2 = std::array<Complex, 4>;

constexpr Complex kI{0.0, 1.0};

Mat2 u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return {Complex{c, 0.0}, -std::exp(kI * lambda) * s, std::exp(kI * phi) * s,
          std::exp(kI * (phi + lambda)) * c};
}

Mat2 single_qubit(GateKind kind, std::span<const double> p) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -kI, kI, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::S: return {1.0, 0.0, 0.0, kI};
    case GateKind::Sdg: return {1.0, 0.0, 0.0, -kI};
    case GateKind::T: return {1.0, 0.0, 0.0, std::exp(kI * (std::numbers::pi / 4))};
    case GateKind::Tdg: return {1.0, 0.0, 0.0, std::exp(-kI * (std::numbers::pi / 4))};
    case GateKind::SX:
      return {Complex{0.5, 0.5}, Complex{0.5, -0.5}, Complex{0.5, -0.5},
              Complex{0.5, 0.5}};
    case GateKind::Id: return {1.0, 0.0, 0.0, 1.0};
    case GateKind::RX: {
      const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
      return {c, -kI * s, -kI * s, c};
    }
    case GateKind::RY: {
      const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
      return {c, -s, s, c};
    }
    case GateKind::RZ:
      return {std::exp(-kI * (p[0] / 2)), 0.0, 0.0, std::exp(kI * (p[0] / 2))};
    case GateKind::P:
    case GateKind::U1: return {1.0, 0.0, 0.0, std::exp(kI * p[0])};
    case GateKind::U2: return u3_matrix(std::numbers::pi / 2, p[0], p[1]);
    case GateKind::U3: return u3_matrix(p[0], p[1], p[2]);
    default: break;
  }
  throw std::logic_error("not a single-qubit gate");
}

/// Identity on all indices except those with every control bit set, where
/// `target` acts on the last operand.
std::vector<Complex> controlled(const Mat2& target, std::size_t num_controls) {
  const std::size_t n = num_controls + 1;
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> m(dim * dim, 0.0);
  const std::size_t control_mask = (std::size_t{1} << num_controls) - 1;
  const std::size_t target_bit = std::size_t{1} << num_controls;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & control_mask) != control_mask) {
      m[i * dim + i] = 1.0;
      continue;
    }
    const std::size_t row_t = (i & target_bit) ? 1 : 0;
    for (std::size_t col_t = 0; col_t < 2; ++col_t) {
      const std::size_t j = (i & ~target_bit) | (col_t ? target_bit : 0);
      m[i * dim + j] = target[row_t * 2 + col_t];
    }
  }
  return m;
}

std::vector<Complex> permutation(std::size_t n, auto&& map) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> m(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) m[map(i) * dim + i] = 1.0;
  return m;
}

}  // namespace

const GateInfo& gate_info(GateKind kind) {
  return kGates[static_cast<std::size_t>(kind)];
}

std::string_view gate_name(GateKind kind) { return gate_info(kind).name; }

std::optional<GateKind> lookup_gate(std::string_view name) {
  for (const auto& g : kGates) {
    if (g.name == name) return g.kind;
  }
  return std::nullopt;
}

std::span<const GateInfo> all_gates() { return kGates; }

bool is_self_inverse(GateKind kind) {
  switch (kind) {
    case GateKind::H: case GateKind::X: case GateKind::Y: case GateKind::Z:
    case GateKind::CX: case GateKind::CY: case GateKind::CZ: case GateKind::CH:
    case GateKind::Swap: case GateKind::CCX: case GateKind::C3X:
    case GateKind::C4X: case GateKind::CSwap:
      return true;
    default:
      return false;
  }
}

std::optional<GateKind> named_inverse(GateKind kind) {
  switch (kind) {
    case GateKind::S: return GateKind::Sdg;
    case GateKind::Sdg: return GateKind::S;
    case GateKind::T: return GateKind::Tdg;
    case GateKind::Tdg: return GateKind::T;
    default: return std::nullopt;
  }
}

bool is_additive_rotation(GateKind kind) {
  switch (kind) {
    case GateKind::RX: case GateKind::RY: case GateKind::RZ: case GateKind::P:
    case GateKind::U1: case GateKind::CRX: case GateKind::CRY:
    case GateKind::CRZ: case GateKind::CP: case GateKind::RXX:
      return true;
    default:
      return false;
  }
}

bool is_symmetric_two_qubit(GateKind kind) {
  return kind == GateKind::Swap || kind == GateKind::CZ ||
         kind == GateKind::CP || kind == GateKind::RXX;
}

std::vector<Complex> gate_matrix(GateKind kind, std::span<const double> params) {
  const auto& info = gate_info(kind);
  if (params.size() != info.num_params) {
    throw std::invalid_argument("parameter count mismatch for gate");
  }
  switch (kind) {
    case GateKind::CX: return controlled(single_qubit(GateKind::X, {}), 1);
    case GateKind::CY: return controlled(single_qubit(GateKind::Y, {}), 1);
    case GateKind::CZ: return controlled(single_qubit(GateKind::Z, {}), 1);
    case GateKind::CH: return controlled(single_qubit(GateKind::H, {}), 1);
    case GateKind::CRX: return controlled(single_qubit(GateKind::RX, params), 1);
    case GateKind::CRY: return controlled(single_qubit(GateKind::RY, params), 1);
    case GateKind::CRZ: return controlled(single_qubit(GateKind::RZ, params), 1);
    case GateKind::CP: return controlled(single_qubit(GateKind::P, params), 1);
    case GateKind::CU: {
      auto u = u3_matrix(params[0], params[1], params[2]);
      for (auto& e : u) e *= std::exp(kI * params[3]);
      return controlled(u, 1);
    }
    case GateKind::CCX: return controlled(single_qubit(GateKind::X, {}), 2);
    case GateKind::C3X: return controlled(single_qubit(GateKind::X, {}), 3);
    case GateKind::C4X: return controlled(single_qubit(GateKind::X, {}), 4);
    case GateKind::Swap:
      return permutation(2, [](std::size_t i) {
        return ((i & 1) << 1) | ((i >> 1) & 1);
      });
    case GateKind::CSwap:
      return permutation(3, [](std::size_t i) {
        if (!(i & 1)) return i;
        const std::size_t b1 = (i >> 1) & 1, b2 = (i >> 2) & 1;
        return std::size_t{1} | (b2 << 1) | (b1 << 2);
      });
    case GateKind::RXX: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      std::vector<Complex> m(16, 0.0);
      for (std::size_t i = 0; i < 4; ++i) {
        m[i * 4 + i] = c;
        m[i * 4 + (i ^ 3)] = -kI * s;
      }
      return m;
    }
    case GateKind::Barrier:
      throw std::logic_error("barrier has no matrix");
    default: {
      auto u = single_qubit(kind, params);
      return {u.begin(), u.end()};
    }
  }
}

}  // namespace crossqasm
