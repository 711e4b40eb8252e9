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

#include <gtest/gtest.h>

#include <numbers>

#include "crossqasm/circuit.hpp"
#include "crossqasm/library.hpp"
#include "crossqasm/qasm.hpp"
#include "worked_examples.hpp"
#include "test_support.hpp"

namespace crossqasm {
namespace {

using namespace testing;
constexpr double kPi = std::numbers::pi;

GateApp op(GateKind k, std::vector<std::size_t> q, std::vector<double> p = {}) {
  return GateApp{k, std::move(p), std::move(q), std::nullopt};
}

Circuit circ(std::size_t n, std::vector<GateApp> ops) {
  Circuit c;
  c.num_qubits = n;
  c.qregs = {{"q", n}};
  c.ops = std::move(ops);
  return c;
}

TEST(Lower, EmptyProgram) {
  const Circuit c = lower(parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n"));
  EXPECT_EQ(c.num_qubits, 3u);
  EXPECT_TRUE(c.ops.empty());
}

TEST(Lower, RegistersConcatenateInDeclarationOrder) {
  const Circuit c = lower(parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg a[2];\nqreg b[3];\ncx b[1],a[1];\n"));
  EXPECT_EQ(c.num_qubits, 5u);
  EXPECT_EQ(c.ops[0].qubits, (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(c.source_register(3), (std::pair<std::string, std::size_t>{"b", 1}));
  // raise keeps the original register names.
  EXPECT_NE(print(raise(c)).find("cx b[1],a[1];"), std::string::npos);
}

TEST(Lower, BarriersAreDropped) {
  const Circuit c = lower(parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\nbarrier q;\nh q[1];\n"));
  EXPECT_EQ(c.ops.size(), 2u);
}

TEST(Lower, ParameterisedDefinitionsBindArguments) {
  const Circuit c = lower(parse(
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"
      "gate g(a,b) x,y { rz(a/2) x; cx x,y; ry(-b+pi) y; }\n"
      "qreg q[2];\ng(pi,0.5) q[1],q[0];\n"));
  ASSERT_EQ(c.ops.size(), 3u);
  EXPECT_DOUBLE_EQ(c.ops[0].params[0], kPi / 2);
  EXPECT_EQ(c.ops[0].qubits, (std::vector<std::size_t>{1}));
  EXPECT_EQ(c.ops[1].qubits, (std::vector<std::size_t>{1, 0}));
  EXPECT_DOUBLE_EQ(c.ops[2].params[0], -0.5 + kPi);
}

TEST(Raise, EmptyCircuitIsPrologueAndRegister) {
  EXPECT_EQ(print(raise(circ(1, {}))), "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\n");
}

TEST(Raise, C3xStaysC3x) {
  const std::string text = print(raise(circ(4, {op(GateKind::C3X, {0, 1, 2, 3})})));
  EXPECT_NE(text.find("c3x q[0],q[1],q[2],q[3];"), std::string::npos);
  EXPECT_EQ(text.find("c4x"), std::string::npos);
}

TEST(Raise, HadamardSwapText) {
  const std::string text = print(raise(circ(2, {op(GateKind::H, {0}), op(GateKind::Swap, {0, 1})})));
  EXPECT_EQ(text, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\nswap q[0],q[1];\n");
}

TEST(Raise, BrokenCompositeIsEmittedAsBuiltins) {
  Circuit c = lower(parse(kCsWithDefinition));
  c.ops.pop_back();
  const std::string text = print(raise(c));
  EXPECT_EQ(text.find("cs q"), std::string::npos);
  EXPECT_EQ(text.find("gate cs"), std::string::npos);
  EXPECT_NE(text.find("cx q[4],q[0];"), std::string::npos);
}

TEST(Counts, Examples) {
  const Circuit fig1 = lower(parse(kHadamardSwapRebased));
  EXPECT_EQ(gate_count(fig1), 4u);
  EXPECT_EQ(unique_gate_count(fig1), 2u);
  EXPECT_EQ(gate_count(circ(2, {})), 0u);
  EXPECT_EQ(unique_gate_count(circ(2, {})), 0u);
  const Circuit hh = circ(2, {op(GateKind::H, {0}), op(GateKind::H, {0}), op(GateKind::H, {1})});
  EXPECT_EQ(gate_count(hh), 3u);
  EXPECT_EQ(unique_gate_count(hh), 1u);
}

TEST(Unitary, U3HalfPiMatchesHadamardUpToPhase) {
  EXPECT_TRUE(equal_up_to_phase(circ(1, {op(GateKind::U3, {0}, {kPi / 2, 0, kPi})}), circ(1, {op(GateKind::H, {0})})));
}

TEST(Unitary, ThreeCxEqualSwap) {
  const Circuit three = circ(2, {op(GateKind::CX, {0, 1}), op(GateKind::CX, {1, 0}), op(GateKind::CX, {0, 1})});
  const Circuit swap = circ(2, {op(GateKind::Swap, {0, 1})});
  EXPECT_LT(refsim::max_diff(to_ref(unitary_of(three)), to_ref(unitary_of(swap))), 1e-12);
}

TEST(Unitary, EmptyIsIdentity) {
  const Unitary u = unitary_of(circ(3, {}));
  EXPECT_EQ(u.dim, 8u);
  EXPECT_LT(refsim::max_diff(to_ref(u), to_ref(Unitary::identity(3))), 1e-15);
}

TEST(Unitary, LittleEndianOrdering) {
  // x on qubit 0 maps |00> to |01>, i.e. index 0 to index 1.
  const Unitary u = unitary_of(circ(2, {op(GateKind::X, {0})}));
  EXPECT_EQ(u.at(1, 0), Complex(1, 0));
  // cx with control 0 maps index 1 to index 3.
  const Unitary v = unitary_of(circ(2, {op(GateKind::CX, {0, 1})}));
  EXPECT_EQ(v.at(3, 1), Complex(1, 0));
}

TEST(Unitary, TooLargeAboveLimit) {
  EXPECT_THROW(unitary_of(circ(9, {})), TooLarge);
  EXPECT_NO_THROW(unitary_of(circ(3, {}), 3));
  EXPECT_THROW(unitary_of(circ(4, {}), 3), TooLarge);
}

TEST(Unitary, MatchesReferenceSimulator) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Circuit c = random_circuit(rng, 1 + rng() % 5, 1 + rng() % 15);
    ASSERT_LT(refsim::max_diff(to_ref(unitary_of(c)), ref_unitary(c)), 1e-9);
  }
}

TEST(Properties, UnitarityOverRandomCircuits) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Circuit c = random_circuit(rng, 1 + rng() % 6, 1 + rng() % 20);
    ASSERT_LT(unitary_of(c).unitarity_error(), 1e-9);
  }
}

TEST(Properties, SemanticRoundTripThroughRaiseAndLower) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    Circuit c = random_circuit(rng, 1 + rng() % 6, 1 + rng() % 20);
    c.qregs = {{"q", c.num_qubits}};
    const Circuit back = lower(parse(print(raise(c))));
    ASSERT_EQ(back.num_qubits, c.num_qubits);
    ASSERT_LT(phase_distance(unitary_of(back), unitary_of(c)).distance, 1e-9);
  }
}

TEST(Properties, Composition) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 5;
    const Circuit a = random_circuit(rng, n, 1 + rng() % 10);
    const Circuit b = random_circuit(rng, n, 1 + rng() % 10);
    Circuit ab = a;
    ab.ops.insert(ab.ops.end(), b.ops.begin(), b.ops.end());
    const Unitary ua = unitary_of(a), ub = unitary_of(b), uab = unitary_of(ab);
    // ub * ua
    double worst = 0.0;
    for (std::size_t r = 0; r < ua.dim; ++r) {
      for (std::size_t col = 0; col < ua.dim; ++col) {
        Complex s{};
        for (std::size_t k = 0; k < ua.dim; ++k) s += ub.at(r, k) * ua.at(k, col);
        worst = std::max(worst, std::abs(s - uab.at(r, col)));
      }
    }
    ASSERT_LT(worst, 1e-9);
  }
}

TEST(Properties, CsDefinitionMatchesControlledS) {
  const Circuit c = lower(parse(kCsWithDefinition));
  // Controlled-S with control q[4] and target q[0]: cp(pi/2).
  EXPECT_TRUE(equal_up_to_phase(c, circ(5, {op(GateKind::CP, {4, 0}, {kPi / 2})})));
  const GateDef* def = custom_gate("cs");
  ASSERT_NE(def, nullptr);
  EXPECT_EQ(*def, parse(kCsWithDefinition).gate_defs[0]);
}

TEST(CheckGateApp, RejectsBadOps) {
  EXPECT_THROW(check_gate_app(op(GateKind::CX, {0, 0}), 2), LoweringError);
  EXPECT_THROW(check_gate_app(op(GateKind::CX, {0, 2}), 2), LoweringError);
  EXPECT_THROW(check_gate_app(op(GateKind::RZ, {0}), 1), LoweringError);
  EXPECT_NO_THROW(check_gate_app(op(GateKind::RZ, {0}, {1.0}), 1));
}

}  // namespace
}  // namespace crossqasm
