// Copyright (c) 2026 The RIPS Authors
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

#include "rips/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>

extern char ** environ;

namespace rips
{

int ProcessResult::code() const
{
  switch (status) {
    case Status::kExited: return exit_code;
    case Status::kSignaled: return 128 + exit_code;
    case Status::kTimedOut: return -2;
    case Status::kSpawnFailed: return -1;
  }
  return -1;
}

namespace
{

void ignore_sigpipe_once()
{
  static std::once_flag flag;
  std::call_once(flag, [] {::signal(SIGPIPE, SIG_IGN);});
}

struct Fd
{
  int fd{-1};
  Fd() = default;
  explicit Fd(int f)
  : fd(f) {}
  Fd(const Fd &) = delete;
  Fd & operator=(const Fd &) = delete;
  ~Fd() {reset();}
  void reset()
  {
    if (fd >= 0) {
      ::close(fd);
    }
    fd = -1;
  }
};

ProcessResult reap(pid_t pid, int status)
{
  ProcessResult r;
  if (WIFEXITED(status)) {
    r.status = ProcessResult::Status::kExited;
    r.exit_code = WEXITSTATUS(status);
  } else {
    r.status = ProcessResult::Status::kSignaled;
    r.exit_code = WIFSIGNALED(status) ? WTERMSIG(status) : 0;
  }
  (void)pid;
  return r;
}

}  // namespace

ProcessResult run_process(const ProcessSpec & spec)
{
  ignore_sigpipe_once();
  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + spec.timeout;

  // Everything the child needs is built before fork().
  std::vector<std::string> argv_store;
  argv_store.push_back(spec.program);
  argv_store.insert(argv_store.end(), spec.args.begin(), spec.args.end());
  std::vector<char *> argv;
  for (auto & a : argv_store) {
    argv.push_back(a.data());
  }
  argv.push_back(nullptr);

  std::vector<std::string> env_store;
  for (char ** e = environ; e && *e; ++e) {
    std::string_view entry(*e);
    bool overridden = false;
    for (const auto & [k, v] : spec.env) {
      if (entry.size() > k.size() && entry.substr(0, k.size()) == k && entry[k.size()] == '=') {
        overridden = true;
        break;
      }
    }
    if (!overridden) {
      env_store.emplace_back(entry);
    }
  }
  for (const auto & [k, v] : spec.env) {
    env_store.push_back(k + "=" + v);
  }
  std::vector<char *> envp;
  for (auto & e : env_store) {
    envp.push_back(e.data());
  }
  envp.push_back(nullptr);

  int in_pipe[2];
  int err_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) {
    return {ProcessResult::Status::kSpawnFailed, -1, std::strerror(errno)};
  }
  Fd in_read(in_pipe[0]);
  Fd in_write(in_pipe[1]);
  if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
    return {ProcessResult::Status::kSpawnFailed, -1, std::strerror(errno)};
  }
  Fd err_read(err_pipe[0]);
  Fd err_write(err_pipe[1]);

  pid_t pid = ::fork();
  if (pid < 0) {
    return {ProcessResult::Status::kSpawnFailed, -1, std::strerror(errno)};
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(in_read.fd, STDIN_FILENO);
    int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) {
      ::dup2(devnull, STDOUT_FILENO);
    }
    ::execve(argv[0], argv.data(), envp.data());
    int err = errno;
    [[maybe_unused]] auto n = ::write(err_write.fd, &err, sizeof(err));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  in_read.reset();
  err_write.reset();

  int exec_errno = 0;
  if (::read(err_read.fd, &exec_errno, sizeof(exec_errno)) == sizeof(exec_errno)) {
    int status = 0;
    ::waitpid(pid, &status, 0);
    return {ProcessResult::Status::kSpawnFailed, -1, std::strerror(exec_errno)};
  }

  // Feed stdin without blocking past the deadline.
  ::fcntl(in_write.fd, F_SETFL, O_NONBLOCK);
  std::size_t written = 0;
  while (written < spec.stdin_data.size()) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (remaining.count() <= 0) {
      break;
    }
    pollfd pfd{in_write.fd, POLLOUT, 0};
    if (::poll(&pfd, 1, static_cast<int>(remaining.count())) <= 0) {
      break;
    }
    if (pfd.revents & (POLLERR | POLLHUP)) {
      break;
    }
    auto n = ::write(
      in_write.fd, spec.stdin_data.data() + written, spec.stdin_data.size() - written);
    if (n < 0) {
      if (errno == EAGAIN || errno == EINTR) {
        continue;
      }
      break;
    }
    written += static_cast<std::size_t>(n);
  }
  in_write.reset();

  auto sleep_for = std::chrono::microseconds(200);
  for (;;) {
    int status = 0;
    pid_t w = ::waitpid(pid, &status, WNOHANG);
    if (w == pid) {
      return reap(pid, status);
    }
    if (w < 0 && errno != EINTR) {
      return {ProcessResult::Status::kSpawnFailed, -1, std::strerror(errno)};
    }
    if (Clock::now() >= deadline) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      return {ProcessResult::Status::kTimedOut, -2, "timed out"};
    }
    std::this_thread::sleep_for(sleep_for);
    sleep_for = std::min(sleep_for * 2, std::chrono::microseconds(5000));
  }
}

}  // namespace rips
