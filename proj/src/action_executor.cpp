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

#include "rips/action_executor.hpp"

#include "rips/process.hpp"
#include "rips/rule_language.hpp"

namespace rips
{

namespace
{

bool plain_program_name(const std::string & name)
{
  return !name.empty() && name != "." && name != ".." &&
         name.find('/') == std::string::npos && name.find('\0') == std::string::npos;
}

}  // namespace

ActionOutcome act_alert(
  const AlertAction & a, ExecutorState & state, const std::string & rule, std::int64_t tick)
{
  bool ok = state.log.append_alert(tick, rule, a.message);
  return {a, ok, ok ? std::string() : "alert log write failed"};
}

ActionOutcome act_set(
  const SetAction & a, ExecutorState & state, const std::string & rule, std::int64_t tick)
{
  auto fail = [&](std::string why) {
      state.log.append_warning(tick, rule, "set(" + a.variable + "): " + why);
      return ActionOutcome{a, false, std::move(why)};
    };
  if (VariableStore::is_predefined(a.variable)) {
    return fail("'" + a.variable + "' is predefined");
  }
  std::string error;
  auto v = evaluate_value(a.value, state.vars, error);
  if (!v) {
    return fail(error);
  }
  switch (state.vars.set_user(a.variable, *v)) {
    case VariableStore::SetStatus::kOk:
      return {a, true, a.variable + " = " + to_literal(*v)};
    case VariableStore::SetStatus::kPredefined:
      return fail("'" + a.variable + "' is predefined");
    case VariableStore::SetStatus::kTypeChange:
      break;
  }
  return fail("type change to " + std::string(type_name(type_of(*v))));
}

ActionOutcome act_exec(
  const ExecAction & a, ExecutorState & state, const std::string & rule, std::int64_t tick)
{
  if (!plain_program_name(a.program)) {
    return {a, false, "program must be a plain name inside the actions directory"};
  }
  auto path = state.options.actions_dir / a.program;
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    return {a, false, "program not found: " + a.program};
  }
  ProcessSpec spec;
  spec.program = path.string();
  spec.args = a.args;
  spec.env = state.options.env;
  spec.env.emplace_back("RIPS_RULE", rule);
  spec.env.emplace_back("RIPS_LEVEL", state.levels.current().name);
  spec.env.emplace_back("RIPS_TICK", std::to_string(tick));
  spec.timeout = state.options.timeout;
  ProcessResult r = run_process(spec);
  switch (r.status) {
    case ProcessResult::Status::kExited:
      return {a, r.exit_code == 0, "exit " + std::to_string(r.exit_code)};
    case ProcessResult::Status::kSignaled:
      return {a, false, "killed by signal " + std::to_string(r.code() - 128)};
    case ProcessResult::Status::kTimedOut:
      return {a, false, "timed out"};
    case ProcessResult::Status::kSpawnFailed:
      break;
  }
  return {a, false, "spawn failed: " + r.error};
}

ActionOutcome act_trigger(
  const TriggerAction & a, ExecutorState & state, const std::string & rule, std::int64_t tick)
{
  TransitionResult r = state.levels.trigger_level(a.level, rule, tick);
  if (!r.allowed()) {
    state.log.append_warning(
      tick, rule, "trigger(" + a.level + "): " + std::string(to_string(r.status)));
  }
  return {a, r.allowed(), std::string(to_string(r.status))};
}

std::vector<ActionOutcome> execute_chains(const RuleActivation & activation, ExecutorState & state)
{
  std::vector<ActionOutcome> outcomes;
  for (const ActionChain & chain : activation.chains) {
    bool last_ok = true;
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
      if (i > 0) {
        ChainOp op = chain.steps[i - 1].op;
        if (op == ChainOp::kEnd || (op == ChainOp::kThenIfOk && !last_ok) ||
          (op == ChainOp::kThenIfFail && last_ok))
        {
          break;
        }
      }
      const Action & action = chain.steps[i].action;
      ActionOutcome out = std::visit(
        [&](const auto & a) -> ActionOutcome {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, AlertAction>) {
            return act_alert(a, state, activation.rule, activation.tick);
          } else if constexpr (std::is_same_v<T, SetAction>) {
            return act_set(a, state, activation.rule, activation.tick);
          } else if constexpr (std::is_same_v<T, ExecAction>) {
            return act_exec(a, state, activation.rule, activation.tick);
          } else {
            return act_trigger(a, state, activation.rule, activation.tick);
          }
        }, action);
      last_ok = out.success;
      state.log.append(
        LogRecord{LogRecord::Kind::kAction, activation.tick, activation.rule,
          pretty_print(action) + (out.success ? " ok" : " failed") +
          (out.detail.empty() ? "" : ": " + out.detail)});
      outcomes.push_back(std::move(out));
    }
  }
  return outcomes;
}

}  // namespace rips
