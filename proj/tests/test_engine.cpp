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

#include "crossqasm/engine.hpp"
#include "crossqasm/oracle.hpp"
#include "worked_examples.hpp"

namespace crossqasm {
namespace {

using namespace testing;

GeneratedProgram seed_program(const std::string& qasm) {
  GeneratedProgram g;
  g.qasm = qasm;
  return g;
}

IteConfig ite(std::vector<std::string> adapters, std::size_t m, std::uint64_t seed) {
  IteConfig c;
  c.adapters = std::move(adapters);
  c.iterations = m;
  c.seed = seed;
  return c;
}

TEST(Chain, HonestChainHasSixEquivalentMembers) {
  const IteConfig c = ite({"ref_a", "ref_b"}, 5, 1);
  AdapterSet set(resolve_specs(c.adapters));
  const auto cls = run_chain(seed_program(kHadamardSwap), c, set, 0);
  ASSERT_EQ(cls.members.size(), 6u);
  EXPECT_EQ(cls.crash(), nullptr);
  EXPECT_EQ(cls.members[0].qasm, kHadamardSwap);
  for (std::size_t i = 0; i < cls.members.size(); ++i) EXPECT_EQ(cls.members[i].step, i);
  const Circuit first = lower(parse(kHadamardSwap));
  for (const auto& m : cls.members) {
    EXPECT_EQ(check_equivalence(first, lower(parse(m.qasm))).verdict, Verdict::Equivalent) << m.qasm;
  }
}

TEST(Chain, SingleRebaseStepGivesRebasedPair) {
  // Find a stream whose only step picks rebase.u3cx on ref_a.
  const IteConfig c = ite({"ref_a"}, 1, 0);
  AdapterSet set(resolve_specs(c.adapters));
  bool found = false;
  for (std::size_t s = 0; s < 50 && !found; ++s) {
    const auto cls = run_chain(seed_program(kHadamardSwap), c, set, s);
    ASSERT_EQ(cls.provenance.size(), 1u);
    if (cls.provenance[0].transform != "rebase.u3cx") continue;
    found = true;
    ASSERT_EQ(cls.members.size(), 2u);
    EXPECT_EQ(cls.members[0].qasm, kHadamardSwap);
    EXPECT_EQ(cls.members[1].qasm, kHadamardSwapRebased);
  }
  EXPECT_TRUE(found);
}

TEST(Chain, DropGatedefTruncatesAtHonestImport) {
  const IteConfig c = ite({"ref_a:drop_gatedef_on_export", "ref_b"}, 5, 3);
  AdapterSet set(resolve_specs(c.adapters));
  std::size_t seen = 0;
  for (std::size_t s = 0; s < 200; ++s) {
    const auto cls = run_chain(seed_program(kCsWithDefinition), c, set, s);
    const IteStep* crash = cls.crash();
    if (!crash) continue;
    ++seen;
    // Truncation: a crash at step i leaves i members and is the last step.
    EXPECT_EQ(cls.members.size(), crash->step);
    EXPECT_EQ(&cls.provenance.back(), crash);
    EXPECT_EQ(crash->adapter, "ref_b");
    EXPECT_EQ(crash->stage, "import");
    EXPECT_EQ(crash->message, "'cs' is not defined in this scope");
    EXPECT_EQ(cls.provenance[crash->step - 2].adapter, "ref_a:drop_gatedef_on_export");
    EXPECT_EQ(crash_warning(cls)->message, "'cs' is not defined in this scope");
  }
  EXPECT_GT(seen, 10u);
}

TEST(Chain, ReplayIsByteIdentical) {
  const IteConfig c = ite({"ref_a", "ref_b"}, 5, 11);
  GenConfig g;
  g.seed = 11;
  g.num_qubits = 6;
  AdapterSet one(resolve_specs(c.adapters)), two(resolve_specs(c.adapters));
  for (std::size_t s = 0; s < 30; ++s) {
    const auto a = build_class(g, c, one, s);
    const auto b = build_class(g, c, two, s);
    ASSERT_EQ(a.members.size(), b.members.size());
    for (std::size_t i = 0; i < a.members.size(); ++i) ASSERT_EQ(a.members[i].qasm, b.members[i].qasm);
    // Replay from the recorded start reproduces every member.
    const std::string start = a.initial.source_qasm ? *a.initial.source_qasm : a.initial.qasm;
    const auto r = replay(start, a.provenance, one);
    ASSERT_FALSE(r.failure);
    ASSERT_EQ(r.programs.size(), a.members.size());
    for (std::size_t i = 0; i < a.members.size(); ++i) ASSERT_EQ(r.programs[i], a.members[i].qasm);
  }
}

TEST(Chain, SamplingIsUniformOverAdapters) {
  const IteConfig c = ite({"ref_a", "ref_b"}, 5, 2);
  AdapterSet set(resolve_specs(c.adapters));
  std::size_t a = 0, total = 0;
  for (std::size_t s = 0; s < 400; ++s) {
    for (const auto& st : run_chain(seed_program(kHadamardSwap), c, set, s).provenance) {
      a += st.adapter == "ref_a";
      ++total;
    }
  }
  EXPECT_NEAR(static_cast<double>(a) / static_cast<double>(total), 0.5, 0.05);
}

class NoTransforms : public Adapter {
 public:
  std::string id() const override { return "plain"; }
  std::string import_qasm(const std::string& q) override {
    text_ = q;
    ++imports;
    return "only";
  }
  std::string transform(const std::string&, const std::string&) override {
    ++transforms;
    throw AdapterFailure("transform", "no transforms here");
  }
  std::string export_qasm(const std::string&) override { return text_; }
  std::vector<std::string> list_transforms() override { return {}; }
  int imports = 0, transforms = 0;

 private:
  std::string text_;
};

TEST(Chain, EmptyTransformSetIsIdentity) {
  const IteConfig c = ite({"plain"}, 3, 0);
  AdapterSet set({});
  auto owned = std::make_unique<NoTransforms>();
  NoTransforms* plain = owned.get();
  set.add("plain", std::move(owned));
  const auto cls = run_chain(seed_program(kHadamardSwap), c, set, 0);
  ASSERT_EQ(cls.members.size(), 4u);
  for (const auto& st : cls.provenance) EXPECT_EQ(st.transform, kIdentityTransform);
  EXPECT_EQ(plain->imports, 3);
  EXPECT_EQ(plain->transforms, 0);
}

TEST(Chain, GenerationExportFailureIsStepZeroCrash) {
  GenConfig g;
  g.num_qubits = 5;
  g.mode_mix = 0.0;
  const IteConfig c = ite({"ref_a", "ref_b"}, 2, 0);
  AdapterSet set(resolve_specs(c.adapters));
  class Broken : public NoTransforms {
   public:
    std::string export_qasm(const std::string&) override { throw AdapterFailure("export", "cannot export"); }
  };
  set.add("ref_a", std::make_unique<Broken>());
  set.add("ref_b", std::make_unique<Broken>());
  const auto cls = build_class(g, c, set, 0);
  EXPECT_TRUE(cls.members.empty());
  ASSERT_EQ(cls.provenance.size(), 1u);
  EXPECT_EQ(cls.provenance[0].step, 0u);
  EXPECT_EQ(cls.provenance[0].stage, "generate-export");
  EXPECT_EQ(cls.provenance[0].message, "cannot export");
}

TEST(Chain, InvalidConfig) {
  AdapterSet set(resolve_specs({"ref_a"}));
  EXPECT_THROW(run_chain(seed_program(kHadamardSwap), ite({"ref_a"}, 0, 0), set, 0), std::invalid_argument);
  EXPECT_THROW(run_chain(seed_program(kHadamardSwap), ite({}, 1, 0), set, 0), std::invalid_argument);
  EXPECT_THROW(resolve_specs({"nope"}), std::invalid_argument);
}

TEST(Chain, ClassIds) {
  EXPECT_EQ(class_id_for(0), "c00000");
  EXPECT_EQ(class_id_for(123), "c00123");
}

TEST(Timing, StagesAccumulate) {
  const IteConfig c = ite({"ref_a", "ref_b"}, 5, 1);
  GenConfig g;
  g.num_qubits = 6;
  AdapterSet set(resolve_specs(c.adapters));
  StageTimes t;
  for (std::size_t s = 0; s < 20; ++s) build_class(g, c, set, s, &t);
  EXPECT_GT(t.generator.count(), 0.0);
  EXPECT_GT(t.import.count(), 0.0);
  EXPECT_GT(t.transform.count(), 0.0);
  EXPECT_GT(t.export_.count(), 0.0);
}

}  // namespace
}  // namespace crossqasm
