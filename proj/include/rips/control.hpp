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

#ifndef RIPS__CONTROL_HPP_
#define RIPS__CONTROL_HPP_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace rips
{

/// A parsed control line. Verbs: `level NAME`, `mode NAME`,
/// `signal USR1|USR2`, `event JSON`, `status`.
struct ControlRequest
{
  std::string verb;
  std::string arg;
  friend bool operator==(const ControlRequest &, const ControlRequest &) = default;
};

/// Hand-off point between control clients and the scheduler thread.
/// Accepted requests are queued and applied by the scheduler at its next
/// drain; `status` is answered from the last published status line.
class ControlChannel
{
public:
  /// Names accepted by `level` and `mode`. Empty sets accept anything.
  void set_known(std::set<std::string> levels, std::set<std::string> modes);

  /// Handles one protocol line and returns the reply (`ok ...` or `err ...`).
  std::string handle_line(std::string_view line);

  std::vector<ControlRequest> drain();
  void publish_status(std::string status);

private:
  std::mutex mutex_;
  std::vector<ControlRequest> pending_;
  std::string status_{"starting"};
  std::set<std::string> levels_;
  std::set<std::string> modes_;
};

/// Serves a ControlChannel on a local stream socket, one request line per
/// connection or several lines per connection.
class ControlServer
{
public:
  ControlServer(std::filesystem::path socket_path, ControlChannel & channel);
  ~ControlServer();
  ControlServer(const ControlServer &) = delete;
  ControlServer & operator=(const ControlServer &) = delete;

  const std::filesystem::path & path() const {return path_;}

private:
  void serve();
  void serve_client(int fd);

  std::filesystem::path path_;
  ControlChannel & channel_;
  int listen_fd_{-1};
  std::atomic<bool> stop_{false};
  std::thread thread_;
};

/// Sends one line and returns the reply line. Throws std::runtime_error on
/// connection failure or timeout.
std::string control_request(
  const std::filesystem::path & socket_path, const std::string & line,
  std::chrono::milliseconds timeout = std::chrono::seconds(2));

/// Installs SIGUSR1/SIGUSR2 handlers that only record the signal.
void install_user_signal_handlers();

/// Returns and clears the recorded signals ("USR1", "USR2") in a fixed order.
std::vector<std::string> take_user_signals();

}  // namespace rips

#endif  // RIPS__CONTROL_HPP_
