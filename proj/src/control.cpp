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

#include "rips/control.hpp"

#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <csignal>
#include <cstring>
#include <stdexcept>

#include "rips/event_codec.hpp"

namespace rips
{

namespace
{

std::string trim(std::string_view s)
{
  const char * ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) {
    return {};
  }
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

sockaddr_un make_address(const std::filesystem::path & path)
{
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  const std::string s = path.string();
  if (s.size() >= sizeof(addr.sun_path)) {
    throw std::runtime_error("socket path too long: " + s);
  }
  std::memcpy(addr.sun_path, s.c_str(), s.size() + 1);
  return addr;
}

std::atomic<bool> g_usr1{false};
std::atomic<bool> g_usr2{false};

extern "C" void record_user_signal(int sig)
{
  if (sig == SIGUSR1) {
    g_usr1.store(true);
  } else if (sig == SIGUSR2) {
    g_usr2.store(true);
  }
}

}  // namespace

void ControlChannel::set_known(std::set<std::string> levels, std::set<std::string> modes)
{
  std::lock_guard lock(mutex_);
  levels_ = std::move(levels);
  modes_ = std::move(modes);
}

std::string ControlChannel::handle_line(std::string_view raw)
{
  const std::string line = trim(raw);
  const auto space = line.find(' ');
  ControlRequest req{line.substr(0, space), space == std::string::npos ? "" : trim(
      std::string_view(line).substr(space + 1))};

  std::lock_guard lock(mutex_);
  if (req.verb == "status") {
    return req.arg.empty() ? "ok " + status_ : "err status takes no argument";
  }
  if (req.verb == "level" || req.verb == "mode") {
    if (req.arg.empty() || req.arg.find(' ') != std::string::npos) {
      return "err usage: " + req.verb + " NAME";
    }
    const auto & known = req.verb == "level" ? levels_ : modes_;
    if (!known.empty() && !known.count(req.arg)) {
      return "err unknown " + req.verb + " '" + req.arg + "'";
    }
  } else if (req.verb == "signal") {
    if (req.arg != "USR1" && req.arg != "USR2") {
      return "err usage: signal USR1|USR2";
    }
  } else if (req.verb == "event") {
    try {
      decode_event_line(req.arg);
    } catch (const std::exception & e) {
      return std::string("err bad event: ") + e.what();
    }
  } else {
    return "err unknown verb '" + req.verb + "'";
  }
  pending_.push_back(std::move(req));
  return "ok";
}

std::vector<ControlRequest> ControlChannel::drain()
{
  std::lock_guard lock(mutex_);
  std::vector<ControlRequest> out;
  out.swap(pending_);
  return out;
}

void ControlChannel::publish_status(std::string status)
{
  std::lock_guard lock(mutex_);
  status_ = std::move(status);
}

ControlServer::ControlServer(std::filesystem::path socket_path, ControlChannel & channel)
: path_(std::move(socket_path)), channel_(channel)
{
  sockaddr_un addr = make_address(path_);
  listen_fd_ = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (listen_fd_ < 0) {
    throw std::runtime_error("socket: " + std::string(std::strerror(errno)));
  }
  ::unlink(path_.c_str());
  if (::bind(listen_fd_, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0 ||
    ::listen(listen_fd_, 8) != 0)
  {
    std::string err = std::strerror(errno);
    ::close(listen_fd_);
    throw std::runtime_error("cannot listen on " + path_.string() + ": " + err);
  }
  thread_ = std::thread([this] {serve();});
}

ControlServer::~ControlServer()
{
  stop_.store(true);
  if (thread_.joinable()) {
    thread_.join();
  }
  ::close(listen_fd_);
  ::unlink(path_.c_str());
}

void ControlServer::serve()
{
  while (!stop_.load()) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    if (::poll(&pfd, 1, 50) <= 0) {
      continue;
    }
    int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd >= 0) {
      serve_client(fd);
      ::close(fd);
    }
  }
}

void ControlServer::serve_client(int fd)
{
  std::string buffer;
  char chunk[512];
  auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(2);
  while (!stop_.load() && std::chrono::steady_clock::now() < deadline) {
    pollfd pfd{fd, POLLIN, 0};
    if (::poll(&pfd, 1, 50) <= 0) {
      continue;
    }
    ssize_t n = ::read(fd, chunk, sizeof(chunk));
    if (n <= 0) {
      return;
    }
    buffer.append(chunk, static_cast<std::size_t>(n));
    for (auto nl = buffer.find('\n'); nl != std::string::npos; nl = buffer.find('\n')) {
      std::string reply = channel_.handle_line(buffer.substr(0, nl)) + "\n";
      buffer.erase(0, nl + 1);
      if (::send(fd, reply.data(), reply.size(), MSG_NOSIGNAL) < 0) {
        return;
      }
    }
  }
}

std::string control_request(
  const std::filesystem::path & socket_path, const std::string & line,
  std::chrono::milliseconds timeout)
{
  sockaddr_un addr = make_address(socket_path);
  int fd = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd < 0) {
    throw std::runtime_error("socket: " + std::string(std::strerror(errno)));
  }
  struct Closer
  {
    int fd;
    ~Closer() {::close(fd);}
  } closer{fd};
  if (::connect(fd, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0) {
    throw std::runtime_error(
      "cannot connect to " + socket_path.string() + ": " + std::strerror(errno));
  }
  const std::string msg = line + "\n";
  if (::send(fd, msg.data(), msg.size(), MSG_NOSIGNAL) < 0) {
    throw std::runtime_error("send failed: " + std::string(std::strerror(errno)));
  }
  std::string reply;
  char chunk[512];
  auto deadline = std::chrono::steady_clock::now() + timeout;
  while (reply.find('\n') == std::string::npos) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
      deadline - std::chrono::steady_clock::now()).count();
    pollfd pfd{fd, POLLIN, 0};
    if (left <= 0 || ::poll(&pfd, 1, static_cast<int>(left)) <= 0) {
      throw std::runtime_error("no reply from " + socket_path.string());
    }
    ssize_t n = ::read(fd, chunk, sizeof(chunk));
    if (n <= 0) {
      throw std::runtime_error("connection closed before a reply");
    }
    reply.append(chunk, static_cast<std::size_t>(n));
  }
  return reply.substr(0, reply.find('\n'));
}

void install_user_signal_handlers()
{
  struct sigaction sa{};
  sa.sa_handler = record_user_signal;
  sigemptyset(&sa.sa_mask);
  sa.sa_flags = SA_RESTART;
  sigaction(SIGUSR1, &sa, nullptr);
  sigaction(SIGUSR2, &sa, nullptr);
}

std::vector<std::string> take_user_signals()
{
  std::vector<std::string> out;
  if (g_usr1.exchange(false)) {
    out.emplace_back("USR1");
  }
  if (g_usr2.exchange(false)) {
    out.emplace_back("USR2");
  }
  return out;
}

}  // namespace rips
