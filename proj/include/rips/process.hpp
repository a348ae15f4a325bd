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

#ifndef RIPS__PROCESS_HPP_
#define RIPS__PROCESS_HPP_

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace rips
{

struct ProcessSpec
{
  std::string program;  // path to an executable, not searched in PATH
  std::vector<std::string> args;
  std::vector<std::pair<std::string, std::string>> env;  // added to the inherited environment
  std::string stdin_data;
  std::chrono::milliseconds timeout{5000};
};

struct ProcessResult
{
  enum class Status { kExited, kSignaled, kTimedOut, kSpawnFailed };

  Status status{Status::kSpawnFailed};
  int exit_code{-1};
  std::string error;

  bool ok() const {return status == Status::kExited && exit_code == 0;}

  /// Exit code, or -1 when the program could not be started and -2 when it
  /// was killed on timeout. Signal deaths map to 128 + signal number.
  int code() const;
};

/// Runs a program to completion, feeding `stdin_data` and killing the whole
/// process group when the timeout expires. Standard output is discarded.
ProcessResult run_process(const ProcessSpec & spec);

}  // namespace rips

#endif  // RIPS__PROCESS_HPP_
