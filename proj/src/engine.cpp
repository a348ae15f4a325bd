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

#include "rips/engine.hpp"

namespace rips
{

bool EventQueue::push(Event ev)
{
  std::unique_lock lock(mutex_);
  not_full_.wait(lock, [this] {return closed_ || items_.size() < capacity_;});
  if (closed_) {
    return false;
  }
  items_.push_back(std::move(ev));
  not_empty_.notify_one();
  return true;
}

bool EventQueue::try_push(Event ev)
{
  std::lock_guard lock(mutex_);
  if (closed_ || items_.size() >= capacity_) {
    return false;
  }
  items_.push_back(std::move(ev));
  not_empty_.notify_one();
  return true;
}

std::optional<Event> EventQueue::pop()
{
  std::unique_lock lock(mutex_);
  not_empty_.wait(lock, [this] {return closed_ || !items_.empty();});
  if (items_.empty()) {
    return std::nullopt;
  }
  Event ev = std::move(items_.front());
  items_.pop_front();
  not_full_.notify_one();
  return ev;
}

std::optional<Event> EventQueue::try_pop()
{
  std::lock_guard lock(mutex_);
  if (items_.empty()) {
    return std::nullopt;
  }
  Event ev = std::move(items_.front());
  items_.pop_front();
  not_full_.notify_one();
  return ev;
}

void EventQueue::close()
{
  std::lock_guard lock(mutex_);
  closed_ = true;
  not_empty_.notify_all();
  not_full_.notify_all();
}

std::size_t EventQueue::size() const
{
  std::lock_guard lock(mutex_);
  return items_.size();
}

namespace
{

RuleSet checked(RuleSet rules)
{
  auto errors = validate_ruleset(rules);
  if (!errors.empty()) {
    std::string msg = "invalid rule set:";
    for (const auto & e : errors) {
      msg += "\n  " + (e.rule.empty() ? std::string() : e.rule + ": ") +
        std::string(to_string(e.kind)) + ": " + e.detail;
    }
    throw EngineError(msg, std::move(errors));
  }
  for (auto & r : rules.rules) {
    r.inferred_class = infer_class(r.expr);
  }
  return rules;
}

}  // namespace

Engine::Engine(RuleSet rules, EngineOptions options)
: rules_(checked(std::move(rules))),
  options_(std::move(options)),
  levels_(rules_.levels)
{
  std::map<std::string, std::string> env(options_.env.begin(), options_.env.end());
  levels_.set_runner(
    std::make_shared<ProcessProcedureRunner>(
      options_.base_dir, env, options_.procedure_timeout));
  vars_.set_level(levels_.current().name);
  levels_.add_listener([this](const TransitionRecord & rec) {vars_.set_level(rec.to_level);});
  refresh_clock(options_.start_tick);
  try {
    signatures_.load(options_.base_dir, rules_.signature_paths);
  } catch (const std::exception & e) {
    throw EngineError(e.what());
  }
  plugins_ = std::make_shared<ProcessPluginRunner>(options_.plugin_dir, options_.plugin_timeout);
}

void Engine::set_procedure_runner(std::shared_ptr<ProcedureRunner> runner)
{
  levels_.set_runner(std::move(runner));
}

void Engine::refresh_clock(std::int64_t tick)
{
  std::int64_t rate = options_.tick_rate > 0 ? options_.tick_rate : 1;
  std::int64_t elapsed = tick > options_.start_tick ? tick - options_.start_tick : 0;
  vars_.set_clock(tick, elapsed / rate);
}

std::vector<RuleActivation> Engine::process_event(const Event & ev)
{
  refresh_clock(ev.timestamp);
  const EventClass ec = ev.event_class();
  std::vector<std::string> warnings;
  EvalContext ctx{vars_, plugins_.get(), &signatures_, &warnings};
  std::vector<RuleActivation> out;
  for (const Rule & rule : rules_.rules) {
    if (rule.inferred_class != ec && rule.inferred_class != EventClass::kNeutral) {
      continue;
    }
    ++evaluations_[static_cast<std::size_t>(rule.inferred_class)][static_cast<std::size_t>(ec)];
    warnings.clear();
    bool fired = evaluator_.eval_expression(*rule.expr, ev, ctx);
    for (const auto & w : warnings) {
      log_.append_warning(ev.timestamp, rule.name, w);
    }
    if (fired) {
      out.push_back(RuleActivation{rule.name, rule.chains, ev.timestamp});
    }
  }
  return out;
}

std::vector<ActionOutcome> Engine::execute(const RuleActivation & activation)
{
  ExecutorState state{vars_, log_, levels_,
    ExecOptions{options_.actions_dir, options_.exec_timeout, options_.env}};
  return execute_chains(activation, state);
}

std::vector<ActionOutcome> Engine::handle_event(const Event & ev)
{
  std::vector<ActionOutcome> all;
  for (const auto & act : process_event(ev)) {
    auto outs = execute(act);
    all.insert(all.end(), std::make_move_iterator(outs.begin()), std::make_move_iterator(outs.end()));
  }
  return all;
}

std::size_t Engine::drain(EventQueue & queue)
{
  std::size_t n = 0;
  while (auto ev = queue.try_pop()) {
    handle_event(*ev);
    ++n;
  }
  return n;
}

TransitionResult Engine::admin_set_level(const std::string & level, std::int64_t tick)
{
  return levels_.admin_set_level(level, tick);
}

std::size_t Engine::evaluations(EventClass rule_class, EventClass event_class) const
{
  return evaluations_[static_cast<std::size_t>(rule_class)][static_cast<std::size_t>(event_class)];
}

}  // namespace rips
