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

#ifndef RIPS__ENGINE_HPP_
#define RIPS__ENGINE_HPP_

#include <array>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rips/action_executor.hpp"
#include "rips/alert_levels.hpp"
#include "rips/evaluator.hpp"
#include "rips/event_log.hpp"
#include "rips/events.hpp"
#include "rips/rule_language.hpp"
#include "rips/variables.hpp"

namespace rips
{

/// Thrown when a rule set cannot be loaded into an engine.
class EngineError : public std::runtime_error
{
public:
  EngineError(std::string message, std::vector<ValidationError> errors = {})
  : std::runtime_error(std::move(message)), errors_(std::move(errors)) {}

  const std::vector<ValidationError> & errors() const {return errors_;}

private:
  std::vector<ValidationError> errors_;
};

struct EngineOptions
{
  /// Relative signature files and level procedures resolve against this.
  std::filesystem::path base_dir{"."};
  std::filesystem::path actions_dir{"actions"};
  std::filesystem::path plugin_dir{"plugins"};
  std::chrono::milliseconds plugin_timeout{500};
  std::chrono::milliseconds exec_timeout{std::chrono::seconds(5)};
  std::chrono::milliseconds procedure_timeout{std::chrono::seconds(5)};
  /// Ticks per second; Uptime is reported in whole seconds.
  std::int64_t tick_rate{10};
  std::int64_t start_tick{0};
  /// Extra environment for exec() programs and level procedures.
  std::vector<std::pair<std::string, std::string>> env;
};

/// Bounded FIFO shared by event producers and the engine thread.
class EventQueue
{
public:
  explicit EventQueue(std::size_t capacity = 4096) : capacity_(capacity) {}

  /// Blocks while full. Returns false once closed.
  bool push(Event ev);
  /// Returns false when full or closed.
  bool try_push(Event ev);
  /// Blocks until an event arrives or the queue is closed and empty.
  std::optional<Event> pop();
  std::optional<Event> try_pop();
  void close();
  std::size_t size() const;

private:
  mutable std::mutex mutex_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<Event> items_;
  std::size_t capacity_;
  bool closed_{false};
};

/// Rule engine: evaluates the rules matching each event's class and runs
/// the action chains of the rules that fire.
class Engine
{
public:
  /// Validates the rule set and loads its signature files. Throws EngineError.
  explicit Engine(RuleSet rules, EngineOptions options = {});

  /// Evaluates the rules for `ev` without running any action. Time and
  /// Uptime are refreshed from the event timestamp first.
  std::vector<RuleActivation> process_event(const Event & ev);

  std::vector<ActionOutcome> execute(const RuleActivation & activation);

  /// process_event followed by execute for every activation.
  std::vector<ActionOutcome> handle_event(const Event & ev);

  /// Processes every queued event in arrival order. Returns the count.
  std::size_t drain(EventQueue & queue);

  TransitionResult admin_set_level(const std::string & level, std::int64_t tick);

  const RuleSet & rules() const {return rules_;}
  VariableStore & vars() {return vars_;}
  const VariableStore & vars() const {return vars_;}
  LevelManager & levels() {return levels_;}
  EventLog & log() {return log_;}
  const EventLog & log() const {return log_;}
  SignatureRegistry & signatures() {return signatures_;}
  const EngineOptions & options() const {return options_;}

  void set_plugin_runner(std::shared_ptr<PluginRunner> runner) {plugins_ = std::move(runner);}
  void set_procedure_runner(std::shared_ptr<ProcedureRunner> runner);

  /// Number of rule evaluations of rules of class `rule_class` against
  /// events of class `event_class`.
  std::size_t evaluations(EventClass rule_class, EventClass event_class) const;

private:
  void refresh_clock(std::int64_t tick);

  RuleSet rules_;
  EngineOptions options_;
  VariableStore vars_;
  LevelManager levels_;
  EventLog log_;
  SignatureRegistry signatures_;
  std::shared_ptr<PluginRunner> plugins_;
  Evaluator evaluator_;
  std::array<std::array<std::size_t, 4>, 4> evaluations_{};
};

}  // namespace rips

#endif  // RIPS__ENGINE_HPP_
