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

#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <sys/types.h>
#include <vector>

#include "crossqasm/adapter.hpp"

namespace crossqasm {

/// Adapter backed by a child process (`/bin/sh -c command`) speaking
/// newline-delimited JSON on stdin/stdout. The child is spawned lazily and
/// respawned after it dies; handles do not survive a respawn.
///
/// Failures surface as AdapterFailure: "timeout after <n> s" (the child is
/// killed), "process exited", "protocol error: ...", or the child's own
/// error text. stderr captured so far is attached as diagnostics.
class SubprocessAdapter : public Adapter {
 public:
  SubprocessAdapter(std::string id, std::string command, double timeout_secs = 30.0);
  ~SubprocessAdapter() override;

  SubprocessAdapter(const SubprocessAdapter&) = delete;
  SubprocessAdapter& operator=(const SubprocessAdapter&) = delete;

  std::string id() const override { return id_; }
  std::string import_qasm(const std::string& qasm) override;
  std::string transform(const std::string& handle, const std::string& transform_id) override;
  std::string export_qasm(const std::string& handle) override;
  std::vector<std::string> list_transforms() override;

  /// Sends shutdown and reaps the child.
  void close();
  bool running() const { return pid_ > 0; }
  pid_t pid() const { return pid_; }

 private:
  struct Response;
  Response call(const std::string& stage, const std::string& op, const std::string& request_body);
  void spawn(const std::string& stage);
  void kill_child();
  void drain_stderr();
  [[noreturn]] void desync(const std::string& stage, const std::string& message);
  [[noreturn]] void child_gone(const std::string& stage);
  [[noreturn]] void fail(const std::string& stage, const std::string& message);

  std::string id_;
  std::string command_;
  std::chrono::duration<double> timeout_;
  pid_t pid_ = -1;
  int in_fd_ = -1;   // child's stdin
  int out_fd_ = -1;  // child's stdout
  int err_fd_ = -1;  // child's stderr
  std::string out_buf_;
  std::string err_buf_;
  std::int64_t next_id_ = 1;
};

/// Serves the JSON-lines protocol for `adapter` until shutdown or EOF.
/// Exactly one response line per request line.
void serve_protocol(Adapter& adapter, std::istream& in, std::ostream& out);

}  // namespace crossqasm
