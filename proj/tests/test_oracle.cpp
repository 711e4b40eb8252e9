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

#include "crossqasm/oracle.hpp"
#include "worked_examples.hpp"
#include "test_support.hpp"

namespace crossqasm {
namespace {

using namespace testing;

EquivVerdict check(const std::string& a, const std::string& b, double tol = kDefaultTolerance) {
  return check_equivalence(parse(a), parse(b), tol);
}

std::string one(const std::string& body, std::size_t n = 1) {
  return "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" + std::to_string(n) + "];\n" + body;
}

TEST(SelectPairs, ThreeMembersTopTwo) {
  const auto s = select_pairs({3, 10, 7}, 2);
  ASSERT_EQ(s.pairs.size(), 2u);
  EXPECT_EQ(s.pairs[0], (SelectedPair{0, 1, 7}));
  EXPECT_EQ(s.pairs[1], (SelectedPair{0, 2, 4}));
}

TEST(SelectPairs, TenMembersFiveOfFortyFive) {
  std::vector<std::size_t> counts = {4, 9, 1, 15, 15, 2, 8, 30, 7, 11};
  const auto s = select_pairs(counts, 5);
  EXPECT_EQ(s.pairs.size(), 5u);
  EXPECT_NEAR(1.0 - 5.0 / 45.0, 0.889, 5e-4);
  // Exhaustive check of the top-k rule.
  std::vector<SelectedPair> all;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (std::size_t j = i + 1; j < counts.size(); ++j) {
      all.push_back({i, j, counts[i] > counts[j] ? counts[i] - counts[j] : counts[j] - counts[i]});
    }
  }
  ASSERT_EQ(all.size(), 45u);
  std::stable_sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.diff > b.diff; });
  for (std::size_t p = 0; p < 5; ++p) EXPECT_EQ(s.pairs[p], all[p]);
}

TEST(SelectPairs, TiesFollowIndexOrder) {
  const auto s = select_pairs({5, 5, 5, 5}, 3);
  ASSERT_EQ(s.pairs.size(), 3u);
  EXPECT_EQ(s.pairs[0], (SelectedPair{0, 1, 0}));
  EXPECT_EQ(s.pairs[1], (SelectedPair{0, 2, 0}));
  EXPECT_EQ(s.pairs[2], (SelectedPair{0, 3, 0}));
}

TEST(SelectPairs, FewerPairsThanK) {
  EXPECT_EQ(select_pairs({1, 2}, 5).pairs.size(), 1u);
  EXPECT_THROW(select_pairs({1}, 5), TooFewMembers);
}

TEST(Equivalence, RebasePairIsEquivalent) {
  EXPECT_EQ(check(kHadamardSwap, kHadamardSwapRebased).verdict, Verdict::Equivalent);
}

TEST(Equivalence, HadamardIsNotIdentity) {
  const auto v = check(one("h q[0];\n"), one(""));
  EXPECT_EQ(v.verdict, Verdict::NotEquivalent);
  EXPECT_GT(v.distance, 0.1);
}

TEST(Equivalence, RzAndPDifferByGlobalPhase) {
  const auto v = check(one("rz(0.7) q[0];\n"), one("p(0.7) q[0];\n"));
  EXPECT_EQ(v.verdict, Verdict::Equivalent);
  EXPECT_NEAR(std::arg(v.phase), -0.35, 1e-12);
}

TEST(Equivalence, PauliProductIsPureGlobalPhase) {
  // x*y*z = i*I, so appending z; y; x never changes a verdict.
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    Circuit a = random_circuit(rng, 3, 1 + rng() % 8);
    Circuit b = random_circuit(rng, 3, 1 + rng() % 8);
    a.qregs = b.qregs = {{"q", 3}};
    Circuit a2 = a;
    for (auto k : {GateKind::Z, GateKind::Y, GateKind::X}) a2.ops.push_back(GateApp{k, {}, {1}, std::nullopt});
    EXPECT_EQ(check_equivalence(a2, a).verdict, Verdict::Equivalent);
    EXPECT_EQ(check_equivalence(a2, b).verdict, check_equivalence(a, b).verdict);
  }
}

TEST(Equivalence, ReflexiveSymmetricMonotone) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 3;
    Circuit a = random_circuit(rng, n, 1 + rng() % 5);
    Circuit b = random_circuit(rng, n, 1 + rng() % 5);
    EXPECT_EQ(check_equivalence(a, a).verdict, Verdict::Equivalent);
    const auto ab = check_equivalence(a, b), ba = check_equivalence(b, a);
    EXPECT_EQ(ab.verdict, ba.verdict);
    if (ab.verdict == Verdict::Equivalent) {
      for (double t : {1e-8, 1e-3, 1.0}) EXPECT_EQ(check_equivalence(a, b, t).verdict, Verdict::Equivalent);
    }
  }
}

TEST(Equivalence, TooLargeIsUndecided) {
  const auto v = check(one("h q[0];\n", 9), one("h q[0];\n", 9));
  EXPECT_EQ(v.verdict, Verdict::Undecided);
  EXPECT_EQ(v.reason, "too_large");
}

TEST(Equivalence, WidthHandling) {
  // Same register name: the narrower program is padded.
  EXPECT_EQ(check(one("h q[0];\n", 2), one("h q[0];\n", 3)).verdict, Verdict::Equivalent);
  const std::string other = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg r[3];\nh r[0];\n";
  const auto v = check(one("h q[0];\n", 2), other);
  EXPECT_EQ(v.verdict, Verdict::NotEquivalent);
  EXPECT_EQ(v.reason, "width mismatch");
}

TEST(Equivalence, AgreesWithPhaseScanOnSmallExhaustiveSet) {
  // Every 1-qubit circuit of up to three gates from {h, x, t, s}.
  const char* gates[] = {"h", "x", "t", "s"};
  std::vector<std::string> bodies = {""};
  for (std::size_t len = 1; len <= 3; ++len) {
    std::vector<std::string> next;
    for (const auto& b : bodies) {
      if (std::count(b.begin(), b.end(), '\n') != static_cast<long>(len - 1)) continue;
      for (const char* g : gates) next.push_back(b + g + " q[0];\n");
    }
    bodies.insert(bodies.end(), next.begin(), next.end());
  }
  ASSERT_EQ(bodies.size(), 1u + 4 + 16 + 64);
  std::vector<Circuit> cs;
  for (const auto& b : bodies) cs.push_back(lower(parse(one(b))));
  std::size_t equivalent = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i; j < cs.size(); ++j) {
      const bool lib = check_equivalence(cs[i], cs[j]).verdict == Verdict::Equivalent;
      const bool ref = refsim::scan_equivalent(ref_unitary(cs[i]), ref_unitary(cs[j]));
      ASSERT_EQ(lib, ref) << bodies[i] << "vs\n" << bodies[j];
      equivalent += lib;
    }
  }
  EXPECT_GT(equivalent, cs.size());
}

// ---------------------------------------------------------------------------

EquivalenceClass make_class(std::vector<std::string> members) {
  EquivalenceClass c;
  c.class_id = "c00007";
  for (std::size_t i = 0; i < members.size(); ++i) {
    c.members.push_back({members[i], i});
    if (i > 0) c.provenance.push_back({i, "ref_a", "rebase.u3cx", true, "", "", "", ""});
  }
  return c;
}

TEST(Vet, HonestClassHasNoWarnings) {
  const auto r = vet_class(make_class({kHadamardSwap, kHadamardSwapRebased, kHadamardSwap}), 5);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.pairs_checked, 3u);
}

TEST(Vet, InequivalentPairIsReported) {
  const auto r = vet_class(make_class({kHadamardSwap, kHadamardSwapRebased, one("h q[0];\n", 2)}), 5);
  ASSERT_FALSE(r.warnings.empty());
  const Warning& w = r.warnings[0];
  EXPECT_EQ(w.kind, Warning::Kind::Inequivalence);
  EXPECT_EQ(w.message, "not equivalent");
  EXPECT_EQ(w.class_id, "c00007");
  ASSERT_TRUE(w.pair);
  EXPECT_EQ(w.transform, "rebase.u3cx");
}

TEST(Vet, SingleMemberIsSkipped) {
  const auto r = vet_class(make_class({kHadamardSwap}), 5);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.pairs_checked, 0u);
}

TEST(Vet, UnparsableMemberIsCrash) {
  const auto r = vet_class(make_class({kCsWithDefinition, kCsWithoutDefinition}), 5);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.warnings[0].kind, Warning::Kind::Crash);
  EXPECT_EQ(r.warnings[0].stage, "oracle");
  EXPECT_EQ(r.warnings[0].message, "'cs' is not defined in this scope");
  EXPECT_EQ(r.warnings[0].step, 1u);
}

TEST(Vet, TooLargeCountsUndecided) {
  const auto r = vet_class(make_class({one("h q[0];\n", 9), one("h q[0];\n", 9)}), 5);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.undecided, 1u);
}

TEST(CrashWarning, FromFailedStep) {
  EquivalenceClass c = make_class({kHadamardSwap});
  c.provenance.push_back({1, "ref_b", "opt.cancel_inverses", false, "import", "'c4x' takes 5 qubit arguments, but received 4", "4:1", ""});
  const auto w = crash_warning(c);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->kind, Warning::Kind::Crash);
  EXPECT_EQ(w->adapter, "ref_b");
  EXPECT_EQ(w->stage, "import");
  EXPECT_EQ(w->step, 1u);
  EXPECT_FALSE(crash_warning(make_class({kHadamardSwap, kHadamardSwapRebased})));
}

}  // namespace
}  // namespace crossqasm
