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

#ifndef RIPS__ALERT_LEVELS_HPP_
#define RIPS__ALERT_LEVELS_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rips/rule_ast.hpp"

namespace rips
{

enum class TransitionCause { kRule, kAdmin, kModeFeedback };

std::string_view to_string(TransitionCause c);

struct TransitionRecord
{
  std::string from_level;
  std::string to_level;
  TransitionCause cause{TransitionCause::kRule};
  std::string rule;  // set when cause == kRule
  std::int64_t tick{0};
  std::optional<int> exit_proc_status;   // nullopt: no exit procedure declared
  std::optional<int> enter_proc_status;  // nullopt: no enter procedure declared
  // Monotonic start stamps of the procedures; 0 when not run.
  std::uint64_t exit_started{0};
  std::uint64_t enter_started{0};

  friend bool operator==(const TransitionRecord &, const TransitionRecord &) = default;
};

enum class TransitionStatus { kTransitioned, kNoOp, kDeniedDeescalation, kUnknownLevel };

std::string_view to_string(TransitionStatus s);

struct TransitionResult
{
  TransitionStatus status{TransitionStatus::kNoOp};
  std::optional<TransitionRecord> record;

  bool allowed() const
  {
    return status == TransitionStatus::kTransitioned || status == TransitionStatus::kNoOp;
  }
};

/// Runs a level's enter/exit procedure and returns its exit code
/// (-1 spawn failure, -2 timeout).
class ProcedureRunner
{
public:
  virtual ~ProcedureRunner() = default;
  virtual int run(
    const std::string & procedure, const std::string & from, const std::string & to) = 0;
};

/// Procedures are executables; relative paths resolve against `base`.
class ProcessProcedureRunner : public ProcedureRunner
{
public:
  explicit ProcessProcedureRunner(
    std::filesystem::path base,
    std::map<std::string, std::string> extra_env = {},
    std::chrono::milliseconds timeout = std::chrono::seconds(5));

  int run(const std::string & procedure, const std::string & from, const std::string & to) override;

private:
  std::filesystem::path base_;
  std::map<std::string, std::string> extra_env_;
  std::chrono::milliseconds timeout_;
};

/// Ordered alert levels. Index 0 is the start level and higher indices are
/// more restrictive.
class LevelManager
{
public:
  using Listener = std::function<void (const TransitionRecord &)>;

  explicit LevelManager(
    std::vector<LevelDecl> levels, std::shared_ptr<ProcedureRunner> runner = nullptr);

  /// Autonomous transition requested by a rule. Lowering the level is only
  /// allowed from a soft level.
  TransitionResult trigger_level(
    const std::string & target, const std::string & rule, std::int64_t tick = 0);

  /// Operator transition; allowed in either direction.
  TransitionResult admin_set_level(const std::string & target, std::int64_t tick = 0);

  /// Transition following an external mode change; same policy as rules.
  TransitionResult mode_feedback(const std::string & target, std::int64_t tick = 0);

  /// Runs old.exit then new.enter. Absent procedures report 0.
  std::pair<int, int> run_level_procedures(const LevelDecl & from, const LevelDecl & to);

  const std::vector<LevelDecl> & levels() const {return levels_;}
  std::size_t current_index() const {return current_;}
  const LevelDecl & current() const {return levels_[current_];}
  std::optional<std::size_t> index_of(const std::string & name) const;

  const std::vector<TransitionRecord> & log() const {return log_;}

  void add_listener(Listener l) {listeners_.push_back(std::move(l));}
  void set_runner(std::shared_ptr<ProcedureRunner> runner) {runner_ = std::move(runner);}
  /// Each record is also written as a JSON line.
  void set_log_stream(std::ostream * os) {log_stream_ = os;}

private:
  TransitionResult transition(
    const std::string & target, TransitionCause cause, const std::string & rule,
    std::int64_t tick);
  int run_one(const std::string & proc, const LevelDecl & from, const LevelDecl & to,
    std::uint64_t & started);

  std::vector<LevelDecl> levels_;
  std::size_t current_{0};
  std::shared_ptr<ProcedureRunner> runner_;
  std::vector<TransitionRecord> log_;
  std::vector<Listener> listeners_;
  std::ostream * log_stream_{nullptr};
  std::uint64_t stamp_{0};
};

}  // namespace rips

#endif  // RIPS__ALERT_LEVELS_HPP_
