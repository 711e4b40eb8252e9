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

#include "crossqasm/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <istream>
#include <mutex>
#include "json.hpp"
#include <ostream>
#include <thread>

namespace crossqasm {

using nlohmann::json;

struct SubprocessAdapter::Response {
  json body;
};

namespace {

constexpr std::size_t kStderrCap = 64 * 1024;

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

std::string format_secs(double s) {
  if (s == std::floor(s)) return std::to_string(static_cast<long long>(s));
  return format_double(s);
}

}  // namespace

SubprocessAdapter::SubprocessAdapter(std::string id, std::string command, double timeout_secs)
    : id_(std::move(id)), command_(std::move(command)), timeout_(timeout_secs) {}

SubprocessAdapter::~SubprocessAdapter() { close(); }

void SubprocessAdapter::fail(const std::string& stage, const std::string& message) {
  drain_stderr();
  AdapterFailure f(stage, message);
  f.set_diagnostics(err_buf_);
  throw f;
}

void SubprocessAdapter::desync(const std::string& stage, const std::string& message) {
  // The stream can no longer be trusted; start over with a fresh child.
  drain_stderr();
  std::string diag = err_buf_;
  kill_child();
  AdapterFailure f(stage, message);
  f.set_diagnostics(diag);
  throw f;
}

void SubprocessAdapter::child_gone(const std::string& stage) {
  drain_stderr();
  std::string diag = err_buf_;
  kill_child();
  AdapterFailure f(stage, "process exited");
  f.set_diagnostics(diag);
  throw f;
}

void SubprocessAdapter::spawn(const std::string& stage) {
  ignore_sigpipe();
  int in[2], out[2], err[2];
  if (::pipe2(in, O_CLOEXEC) != 0) fail(stage, std::string("spawn failed: ") + std::strerror(errno));
  if (::pipe2(out, O_CLOEXEC) != 0) {
    ::close(in[0]);
    ::close(in[1]);
    fail(stage, std::string("spawn failed: ") + std::strerror(errno));
  }
  if (::pipe2(err, O_CLOEXEC) != 0) {
    for (int fd : {in[0], in[1], out[0], out[1]}) ::close(fd);
    fail(stage, std::string("spawn failed: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {in[0], in[1], out[0], out[1], err[0], err[1]}) ::close(fd);
    fail(stage, std::string("spawn failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(in[0], 0);
    ::dup2(out[1], 1);
    ::dup2(err[1], 2);
    ::signal(SIGPIPE, SIG_DFL);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in[0]);
  ::close(out[1]);
  ::close(err[1]);
  ::setpgid(pid, pid);
  pid_ = pid;
  in_fd_ = in[1];
  out_fd_ = out[0];
  err_fd_ = err[0];
  ::fcntl(err_fd_, F_SETFL, ::fcntl(err_fd_, F_GETFL) | O_NONBLOCK);
  out_buf_.clear();
  err_buf_.clear();
}

void SubprocessAdapter::drain_stderr() {
  if (err_fd_ < 0) return;
  char buf[4096];
  for (;;) {
    const ssize_t n = ::read(err_fd_, buf, sizeof buf);
    if (n <= 0) break;
    if (err_buf_.size() < kStderrCap) err_buf_.append(buf, static_cast<std::size_t>(n));
  }
}

void SubprocessAdapter::kill_child() {
  if (pid_ > 0) {
    // The shell may have forked the real command; take the whole group.
    ::kill(-pid_, SIGKILL);
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
  }
  for (int* fd : {&in_fd_, &out_fd_, &err_fd_}) {
    if (*fd >= 0) ::close(*fd);
    *fd = -1;
  }
  pid_ = -1;
}

void SubprocessAdapter::close() {
  if (pid_ <= 0) return;
  const std::string line = json{{"id", next_id_++}, {"op", "shutdown"}}.dump() + "\n";
  (void)!::write(in_fd_, line.data(), line.size());
  ::close(in_fd_);
  in_fd_ = -1;
  // Give the child a moment to exit on its own.
  for (int i = 0; i < 50; ++i) {
    if (::waitpid(pid_, nullptr, WNOHANG) == pid_) {
      ::kill(-pid_, SIGKILL);
      pid_ = -1;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  kill_child();
}

SubprocessAdapter::Response SubprocessAdapter::call(const std::string& stage, const std::string& op,
                                                    const std::string& request_body) {
  if (pid_ <= 0) spawn(stage);
  const std::int64_t id = next_id_++;
  json req = json::parse(request_body);
  req["id"] = id;
  req["op"] = op;
  const std::string line = req.dump() + "\n";

  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(in_fd_, line.data() + written, line.size() - written);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) child_gone(stage);
    written += static_cast<std::size_t>(n);
  }

  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    const auto nl = out_buf_.find('\n');
    if (nl != std::string::npos) {
      const std::string reply = out_buf_.substr(0, nl);
      out_buf_.erase(0, nl + 1);
      json body;
      try {
        body = json::parse(reply);
      } catch (const json::exception&) {
        desync(stage, "protocol error: response is not JSON");
      }
      if (!body.is_object() || !body.contains("id") || body["id"] != id) {
        desync(stage, "protocol error: response id does not match request");
      }
      if (!body.value("ok", false)) {
        std::string message = body.contains("error") && body["error"].is_string()
                                  ? body["error"].get<std::string>()
                                  : std::string("error");
        std::string where = body.contains("stage") && body["stage"].is_string()
                                ? body["stage"].get<std::string>()
                                : stage;
        drain_stderr();
        AdapterFailure f(where, message);
        f.set_diagnostics(err_buf_);
        throw f;
      }
      return Response{std::move(body)};
    }

    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      drain_stderr();
      std::string diag = err_buf_;
      kill_child();
      AdapterFailure f(stage, "timeout after " + format_secs(timeout_.count()) + " s");
      f.set_diagnostics(diag);
      throw f;
    }
    pollfd fds[2] = {{out_fd_, POLLIN, 0}, {err_fd_, POLLIN, 0}};
    const int r = ::poll(fds, 2, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (r < 0 && errno != EINTR) child_gone(stage);
    if (fds[1].revents & POLLIN) drain_stderr();
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buf[8192];
      const ssize_t n = ::read(out_fd_, buf, sizeof buf);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) child_gone(stage);
      out_buf_.append(buf, static_cast<std::size_t>(n));
    }
  }
}

std::string SubprocessAdapter::import_qasm(const std::string& qasm) {
  auto r = call("import", "import", json{{"qasm", qasm}}.dump());
  if (!r.body.contains("handle") || !r.body["handle"].is_string()) {
    fail("import", "protocol error: missing handle");
  }
  return r.body["handle"].get<std::string>();
}

std::string SubprocessAdapter::transform(const std::string& handle, const std::string& transform_id) {
  auto r = call("transform", "transform", json{{"handle", handle}, {"transform", transform_id}}.dump());
  if (!r.body.contains("handle") || !r.body["handle"].is_string()) {
    fail("transform", "protocol error: missing handle");
  }
  return r.body["handle"].get<std::string>();
}

std::string SubprocessAdapter::export_qasm(const std::string& handle) {
  auto r = call("export", "export", json{{"handle", handle}}.dump());
  if (!r.body.contains("qasm") || !r.body["qasm"].is_string()) {
    fail("export", "protocol error: missing qasm");
  }
  return r.body["qasm"].get<std::string>();
}

std::vector<std::string> SubprocessAdapter::list_transforms() {
  auto r = call("list_transforms", "list_transforms", "{}");
  std::vector<std::string> out;
  if (!r.body.contains("transforms") || !r.body["transforms"].is_array()) {
    fail("list_transforms", "protocol error: missing transforms");
  }
  for (const auto& t : r.body["transforms"]) {
    if (!t.is_string()) fail("list_transforms", "protocol error: transform id is not a string");
    out.push_back(t.get<std::string>());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Server side

void serve_protocol(Adapter& adapter, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json reply;
    json req;
    try {
      req = json::parse(line);
    } catch (const json::exception&) {
      out << json{{"id", nullptr}, {"ok", false}, {"error", "request is not JSON"}, {"stage", "protocol"}}.dump()
          << "\n"
          << std::flush;
      continue;
    }
    const json id = req.is_object() && req.contains("id") ? req["id"] : json(nullptr);
    const std::string op = req.is_object() && req.contains("op") && req["op"].is_string()
                               ? req["op"].get<std::string>()
                               : std::string();
    reply["id"] = id;
    auto text = [&](const char* key) -> std::string {
      if (!req.contains(key) || !req[key].is_string()) {
        throw AdapterFailure("protocol", std::string("missing field '") + key + "'");
      }
      return req[key].get<std::string>();
    };
    bool stop = false;
    try {
      if (op == "import") {
        reply["handle"] = adapter.import_qasm(text("qasm"));
      } else if (op == "transform") {
        reply["handle"] = adapter.transform(text("handle"), text("transform"));
      } else if (op == "export") {
        reply["qasm"] = adapter.export_qasm(text("handle"));
      } else if (op == "list_transforms") {
        reply["transforms"] = adapter.list_transforms();
      } else if (op == "shutdown") {
        stop = true;
      } else {
        throw AdapterFailure("protocol", "unknown op '" + op + "'");
      }
      reply["ok"] = true;
    } catch (const AdapterFailure& f) {
      reply["ok"] = false;
      reply["error"] = f.message();
      reply["stage"] = f.stage();
    } catch (const std::exception& e) {
      reply["ok"] = false;
      reply["error"] = e.what();
      reply["stage"] = op.empty() ? "protocol" : op;
    }
    out << reply.dump() << "\n" << std::flush;
    if (stop) return;
  }
}

}  // namespace crossqasm
