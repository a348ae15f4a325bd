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

#ifndef RIPS__ACTION_EXECUTOR_HPP_
#define RIPS__ACTION_EXECUTOR_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rips/alert_levels.hpp"
#include "rips/event_log.hpp"
#include "rips/rule_ast.hpp"
#include "rips/variables.hpp"

namespace rips
{

/// A rule whose expression held for an event, with the chains to run.
struct RuleActivation
{
  std::string rule;
  std::vector<ActionChain> chains;
  std::int64_t tick{0};

  friend bool operator==(const RuleActivation &, const RuleActivation &) = default;
};

struct ActionOutcome
{
  Action action;
  bool success{false};
  std::string detail;
};

struct ExecOptions
{
  /// exec() programs are looked up here and nowhere else.
  std::filesystem::path actions_dir;
  std::chrono::milliseconds timeout{std::chrono::seconds(5)};
  std::vector<std::pair<std::string, std::string>> env;
};

/// Mutable state the executor may touch.
struct ExecutorState
{
  VariableStore & vars;
  EventLog & log;
  LevelManager & levels;
  ExecOptions options;
};

/// Runs the chains of an activation in order. Within a chain, `->` runs the
/// next action only after a success, `!->` only after a failure, `,` always,
/// and `end` stops. When an action is skipped the rest of its chain is
/// skipped too. Only executed actions appear in the result.
std::vector<ActionOutcome> execute_chains(const RuleActivation & activation, ExecutorState & state);

ActionOutcome act_alert(
  const AlertAction & a, ExecutorState & state, const std::string & rule, std::int64_t tick);
ActionOutcome act_set(
  const SetAction & a, ExecutorState & state, const std::string & rule, std::int64_t tick);
ActionOutcome act_exec(
  const ExecAction & a, ExecutorState & state, const std::string & rule, std::int64_t tick);
ActionOutcome act_trigger(
  const TriggerAction & a, ExecutorState & state, const std::string & rule, std::int64_t tick);

}  // namespace rips

#endif  // RIPS__ACTION_EXECUTOR_HPP_
