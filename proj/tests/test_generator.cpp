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

#include <cmath>
#include <numbers>

#include "crossqasm/adapter.hpp"
#include "crossqasm/generator.hpp"
#include "crossqasm/rng.hpp"

namespace crossqasm {
namespace {

constexpr double kPi = std::numbers::pi;

std::unique_ptr<Adapter> adapter(const std::string& id) { return make_adapter(*builtin_spec(id)); }

TEST(Rng, DerivedSeedsDependOnEveryInput) {
  EXPECT_EQ(derive_seed(1, 2, "x"), derive_seed(1, 2, "x"));
  EXPECT_NE(derive_seed(1, 2, "x"), derive_seed(2, 2, "x"));
  EXPECT_NE(derive_seed(1, 2, "x"), derive_seed(1, 3, "x"));
  EXPECT_NE(derive_seed(1, 2, "x"), derive_seed(1, 2, "y"));
}

TEST(Rng, IndexIsUniformAndInRange) {
  Rng r(derive_seed(4, 0, "t"));
  std::vector<int> hist(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto v = r.index(7);
    ASSERT_LT(v, 7u);
    ++hist[v];
  }
  for (int h : hist) EXPECT_NEAR(h, n / 7.0, 5 * std::sqrt(n / 7.0));
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Generator, ShapedLikeHadamardSwap) {
  GenConfig c;
  c.seed = 42;
  c.num_qubits = 2;
  c.num_gates = 2;
  c.gate_pool = {GateKind::H, GateKind::Swap};
  c.custom_gates = {};
  c.include_creg = false;
  const QasmProgram p = parse(generate_direct(c, 0).qasm);
  ASSERT_EQ(p.qregs.size(), 1u);
  EXPECT_EQ(p.qregs[0].name, "q");
  EXPECT_EQ(p.qregs[0].size, 2u);
  EXPECT_TRUE(p.cregs.empty());
  ASSERT_EQ(p.statements.size(), 2u);
  for (const auto& st : p.statements) EXPECT_TRUE(st.gate_name == "h" || st.gate_name == "swap");
}

TEST(Generator, ZeroGatesIsRegistersOnly) {
  GenConfig c;
  c.num_gates = 0;
  c.num_qubits = 3;
  c.gate_pool = {GateKind::H};
  EXPECT_EQ(generate_direct(c, 0).qasm, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n");
}

TEST(Generator, Deterministic) {
  GenConfig c;
  c.seed = 9;
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_EQ(generate_direct(c, i).qasm, generate_direct(c, i).qasm);
    EXPECT_EQ(representation_source(c, i), representation_source(c, i));
    EXPECT_EQ(choose_mode(c, i), choose_mode(c, i));
  }
  EXPECT_NE(generate_direct(c, 0).qasm, generate_direct(c, 1).qasm);
  GenConfig d = c;
  d.seed = 10;
  EXPECT_NE(generate_direct(c, 0).qasm, generate_direct(d, 0).qasm);
}

TEST(Generator, TenThousandProgramsAreValid) {
  GenConfig c;
  c.seed = 123;
  std::size_t custom = 0;
  for (std::size_t i = 0; i < 10000; ++i) {
    const auto g = generate_direct(c, i);
    const QasmProgram p = parse(g.qasm);
    ASSERT_TRUE(validate(p).empty()) << g.qasm;
    ASSERT_EQ(p.statements.size(), 15u);
    ASSERT_EQ(p.qregs.size(), 1u);
    ASSERT_EQ(p.qregs[0].size, 11u);
    ASSERT_EQ(p.cregs.size(), 1u);
    ASSERT_EQ(p.cregs[0].size, 11u);
    ASSERT_NO_THROW(lower(p));
    custom += !p.gate_defs.empty();
  }
  // cs appears in roughly 1 - (33/34)^15 of programs.
  EXPECT_GT(custom, 3000u);
  EXPECT_LT(custom, 4500u);
}

TEST(Generator, AnglesAreMultiplesOfPiInZeroToTwo) {
  GenConfig c;
  c.seed = 5;
  c.gate_pool = {GateKind::RZ};
  c.custom_gates = {};
  c.num_gates = 50;
  double sum = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    for (const auto& st : parse(generate_direct(c, i).qasm).statements) {
      const double m = st.params[0].value() / kPi;
      ASSERT_GE(m, 0.0);
      ASSERT_LT(m, 2.0);
      sum += m;
      ++n;
    }
  }
  EXPECT_NEAR(sum / static_cast<double>(n), 1.0, 0.05);
}

TEST(Generator, ModeMixWithinThreeSigma) {
  for (double mix : {0.5, 0.2, 0.9}) {
    GenConfig c;
    c.seed = 77;
    c.mode_mix = mix;
    const int n = 20000;
    int direct = 0;
    for (int i = 0; i < n; ++i) direct += choose_mode(c, static_cast<std::size_t>(i)) == GenMode::Direct;
    const double sigma = std::sqrt(n * mix * (1 - mix));
    EXPECT_NEAR(direct, n * mix, 3 * sigma) << mix;
  }
}

TEST(Generator, ConfigValidation) {
  GenConfig c;
  c.gate_pool = {};
  c.custom_gates = {};
  EXPECT_THROW(validate_config(c), std::invalid_argument);
  GenConfig d;
  d.num_qubits = 3;
  EXPECT_THROW(validate_config(d), std::invalid_argument);  // c4x needs 5
  GenConfig e;
  e.mode_mix = 1.5;
  EXPECT_THROW(validate_config(e), std::invalid_argument);
  GenConfig f;
  f.custom_gates = {"nope"};
  EXPECT_THROW(validate_config(f), std::invalid_argument);
  EXPECT_NO_THROW(validate_config(GenConfig{}));
}

TEST(Representation, C3xThroughHonestAdapter) {
  auto a = adapter("ref_a");
  Circuit c;
  c.num_qubits = 4;
  c.qregs = {{"q", 4}};
  c.ops = {GateApp{GateKind::C3X, {}, {0, 1, 2, 3}, std::nullopt}};
  const std::string out = a->export_circuit(c);
  EXPECT_NE(out.find("c3x q[0],q[1],q[2],q[3];"), std::string::npos);
  auto m = adapter("ref_a:c4x_for_c3x_on_export");
  const std::string bad = m->export_circuit(c);
  EXPECT_NE(bad.find("c4x q[0],q[1],q[2],q[3];"), std::string::npos);
  EXPECT_THROW(adapter("ref_b")->import_qasm(bad), AdapterFailure);
}

TEST(Representation, EmptyCircuitIsRegistersOnly) {
  Circuit c;
  c.num_qubits = 2;
  c.qregs = {{"q", 2}};
  for (const char* id : {"ref_a", "ref_b"}) {
    EXPECT_EQ(adapter(id)->export_circuit(c), "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n");
  }
}

TEST(Representation, ProgramsAreEquivalentToTheirSource) {
  GenConfig c;
  c.seed = 8;
  c.num_qubits = 5;
  auto b = adapter("ref_b");
  for (std::size_t i = 0; i < 100; ++i) {
    const auto g = generate_via_representation(c, *b, i);
    ASSERT_EQ(g.mode, GenMode::Representation);
    ASSERT_EQ(g.adapter_used, std::optional<std::string>("ref_b"));
    ASSERT_TRUE(g.source_qasm);
    const Unitary us = unitary_of(lower(parse(*g.source_qasm)));
    const Unitary ug = unitary_of(lower(parse(g.qasm)));
    ASSERT_LT(phase_distance(us, ug).distance, 1e-9);
    ASSERT_EQ(g.qasm, export_source(*g.source_qasm, *b));
  }
}

class BrokenExporter : public Adapter {
 public:
  std::string id() const override { return "broken"; }
  std::string import_qasm(const std::string&) override { return "h"; }
  std::string transform(const std::string& h, const std::string&) override { return h; }
  std::string export_qasm(const std::string&) override { throw AdapterFailure("export", "exporter exploded"); }
  std::vector<std::string> list_transforms() override { return {}; }
};

TEST(Representation, ExportFailureIsGenerateExportStage) {
  BrokenExporter broken;
  GenConfig c;
  c.num_qubits = 5;
  try {
    generate_via_representation(c, broken, 0);
    FAIL();
  } catch (const AdapterFailure& f) {
    EXPECT_EQ(f.stage(), "generate-export");
    EXPECT_EQ(f.message(), "exporter exploded");
  }
}

}  // namespace
}  // namespace crossqasm
