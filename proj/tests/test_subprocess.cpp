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

#include <signal.h>

#include <random>
#include <sstream>

#include "crossqasm/adapter.hpp"
#include "crossqasm/subprocess.hpp"
#include "json.hpp"
#include "worked_examples.hpp"

namespace crossqasm {
namespace {

using nlohmann::json;
using namespace testing;

std::string serve_command(const std::string& id) { return std::string(CROSSQASM_CLI) + " serve --adapter " + id; }

AdapterFailure failure_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const AdapterFailure& f) {
    return f;
  }
  ADD_FAILURE() << "no AdapterFailure";
  return AdapterFailure("", "");
}

TEST(Subprocess, SpeaksProtocolWithServeChild) {
  SubprocessAdapter a("ext", serve_command("ref_a"));
  EXPECT_FALSE(a.running());
  EXPECT_EQ(a.list_transforms(), (std::vector<std::string>{"opt.remove_redundancies", "rebase.u3cx", "opt.level1"}));
  EXPECT_TRUE(a.running());
  const std::string h = a.import_qasm(kHadamardSwap);
  EXPECT_EQ(a.export_qasm(a.transform(h, "rebase.u3cx")), kHadamardSwapRebased);
  a.close();
  EXPECT_FALSE(a.running());
}

TEST(Subprocess, InvalidImportCarriesPlatformText) {
  SubprocessAdapter a("ext", serve_command("ref_b"));
  const auto f = failure_of([&] { a.import_qasm(kCsWithoutDefinition); });
  EXPECT_EQ(f.stage(), "import");
  EXPECT_EQ(f.message(), "'cs' is not defined in this scope");
  // The session survives platform errors.
  EXPECT_NO_THROW(a.import_qasm(kHadamardSwap));
}

TEST(Subprocess, TimeoutKillsChild) {
  SubprocessAdapter a("slow", "sleep 10", 0.3);
  const auto start = std::chrono::steady_clock::now();
  const auto f = failure_of([&] { a.list_transforms(); });
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(3));
  EXPECT_EQ(f.stage(), "list_transforms");
  EXPECT_EQ(f.message(), "timeout after 0.3 s");
  EXPECT_FALSE(a.running());
}

TEST(Subprocess, KilledChildIsProcessExited) {
  SubprocessAdapter a("doomed", "read line; echo dying >&2; kill -9 $$");
  const auto f = failure_of([&] { a.import_qasm(kHadamardSwap); });
  EXPECT_EQ(f.stage(), "import");
  EXPECT_EQ(f.message(), "process exited");
  EXPECT_NE(f.diagnostics().find("dying"), std::string::npos);
}

TEST(Subprocess, ExternalSigkillMidSession) {
  SubprocessAdapter a("ext", serve_command("ref_a"));
  a.import_qasm(kHadamardSwap);
  ASSERT_GT(a.pid(), 0);
  ::kill(-a.pid(), SIGKILL);
  const auto f = failure_of([&] { a.import_qasm(kHadamardSwap); });
  EXPECT_EQ(f.message(), "process exited");
  // A fresh child is spawned on the next call.
  EXPECT_EQ(a.import_qasm(kHadamardSwap), "h1");
}

TEST(Subprocess, NonJsonResponseIsProtocolError) {
  SubprocessAdapter a("liar", "read line; echo garbage; sleep 10");
  const auto f = failure_of([&] { a.list_transforms(); });
  EXPECT_EQ(f.message(), "protocol error: response is not JSON");
  EXPECT_FALSE(a.running());
}

TEST(Subprocess, MismatchedIdIsProtocolError) {
  SubprocessAdapter a("liar", R"(read line; echo '{"id":999,"ok":true,"transforms":[]}'; sleep 10)");
  const auto f = failure_of([&] { a.list_transforms(); });
  EXPECT_EQ(f.message(), "protocol error: response id does not match request");
}

TEST(Subprocess, ErrorResponseUsesReportedStage) {
  SubprocessAdapter a("err", R"(read line; echo '{"id":1,"ok":false,"error":"boom","stage":"parser"}'; sleep 10)");
  const auto f = failure_of([&] { a.import_qasm("x"); });
  EXPECT_EQ(f.stage(), "parser");
  EXPECT_EQ(f.message(), "boom");
}

TEST(Subprocess, MissingCommandExits) {
  SubprocessAdapter a("none", "/nonexistent/binary/crossqasm-xyz");
  const auto f = failure_of([&] { a.list_transforms(); });
  EXPECT_EQ(f.message(), "process exited");
  EXPECT_FALSE(f.diagnostics().empty());
}

TEST(Subprocess, MakeAdapterBuildsSubprocessSpec) {
  AdapterSpec spec;
  spec.id = "ext_b";
  spec.kind = AdapterSpec::Kind::Subprocess;
  spec.command = serve_command("ref_b");
  auto a = make_adapter(spec);
  EXPECT_EQ(a->id(), "ext_b");
  EXPECT_EQ(a->list_transforms().size(), 3u);
}

// ---------------------------------------------------------------------------
// Server side, driven in-process.

std::vector<json> serve_lines(const std::string& input, const std::string& id = "ref_a") {
  auto adapter = make_adapter(*builtin_spec(id));
  std::istringstream in(input);
  std::ostringstream out;
  serve_protocol(*adapter, in, out);
  std::vector<json> replies;
  std::istringstream lines(out.str());
  std::string line;
  while (std::getline(lines, line)) replies.push_back(json::parse(line));
  return replies;
}

TEST(Serve, ProtocolErrors) {
  const auto r = serve_lines(
      "not json\n"
      R"({"id":1,"op":"frobnicate"})" "\n"
      R"({"id":2,"op":"import"})" "\n"
      R"({"id":3,"op":"export","handle":"h9"})" "\n");
  ASSERT_EQ(r.size(), 4u);
  EXPECT_TRUE(r[0]["id"].is_null());
  EXPECT_EQ(r[0]["error"], "request is not JSON");
  EXPECT_EQ(r[0]["stage"], "protocol");
  EXPECT_EQ(r[1]["error"], "unknown op 'frobnicate'");
  EXPECT_EQ(r[2]["error"], "missing field 'qasm'");
  EXPECT_EQ(r[3]["error"], "unknown handle 'h9'");
  EXPECT_EQ(r[3]["stage"], "export");
  for (const auto& x : r) EXPECT_FALSE(x["ok"].get<bool>());
}

TEST(Serve, ShutdownStopsTheLoop) {
  const auto r = serve_lines(R"({"id":1,"op":"shutdown"})" "\n" R"({"id":2,"op":"list_transforms"})" "\n");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0]["ok"].get<bool>());
}

TEST(Serve, RandomRequestsGetOneOrderedReplyEach) {
  std::mt19937_64 rng(3);
  std::ostringstream in;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    json req{{"id", i}};
    switch (rng() % 6) {
      case 0: req["op"] = "import"; req["qasm"] = rng() % 2 ? kHadamardSwap : kCsWithoutDefinition; break;
      case 1: req["op"] = "transform"; req["handle"] = "h" + std::to_string(rng() % 5); req["transform"] = "rebase.u3cx"; break;
      case 2: req["op"] = "export"; req["handle"] = "h" + std::to_string(rng() % 5); break;
      case 3: req["op"] = "list_transforms"; break;
      case 4: req["op"] = "bogus"; break;
      default: req["qasm"] = 5; break;
    }
    in << req.dump() << "\n";
  }
  const auto r = serve_lines(in.str());
  ASSERT_EQ(r.size(), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ASSERT_EQ(r[i]["id"], i);
    ASSERT_TRUE(r[i].contains("ok"));
    if (!r[i]["ok"].get<bool>()) {
      ASSERT_TRUE(r[i]["error"].is_string());
    }
  }
}

}  // namespace
}  // namespace crossqasm
