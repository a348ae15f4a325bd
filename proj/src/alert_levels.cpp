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

#include "rips/alert_levels.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rips/process.hpp"

namespace rips
{

std::string_view to_string(TransitionCause c)
{
  switch (c) {
    case TransitionCause::kRule: return "rule";
    case TransitionCause::kAdmin: return "admin";
    case TransitionCause::kModeFeedback: return "mode_feedback";
  }
  return "unknown";
}

std::string_view to_string(TransitionStatus s)
{
  switch (s) {
    case TransitionStatus::kTransitioned: return "transitioned";
    case TransitionStatus::kNoOp: return "no-op";
    case TransitionStatus::kDeniedDeescalation: return "denied de-escalation";
    case TransitionStatus::kUnknownLevel: return "unknown level";
  }
  return "unknown";
}

ProcessProcedureRunner::ProcessProcedureRunner(
  std::filesystem::path base, std::map<std::string, std::string> extra_env,
  std::chrono::milliseconds timeout)
: base_(std::move(base)), extra_env_(std::move(extra_env)), timeout_(timeout)
{
}

int ProcessProcedureRunner::run(
  const std::string & procedure, const std::string & from, const std::string & to)
{
  std::filesystem::path p(procedure);
  if (p.is_relative()) {
    p = base_ / p;
  }
  ProcessSpec spec;
  spec.program = p.string();
  spec.env.assign(extra_env_.begin(), extra_env_.end());
  spec.env.emplace_back("RIPS_FROM", from);
  spec.env.emplace_back("RIPS_TO", to);
  spec.timeout = timeout_;
  return run_process(spec).code();
}

LevelManager::LevelManager(
  std::vector<LevelDecl> levels, std::shared_ptr<ProcedureRunner> runner)
: levels_(std::move(levels)), runner_(std::move(runner))
{
  if (levels_.empty()) {
    throw std::invalid_argument("at least one alert level is required");
  }
}

std::optional<std::size_t> LevelManager::index_of(const std::string & name) const
{
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

TransitionResult LevelManager::trigger_level(
  const std::string & target, const std::string & rule, std::int64_t tick)
{
  return transition(target, TransitionCause::kRule, rule, tick);
}

TransitionResult LevelManager::admin_set_level(const std::string & target, std::int64_t tick)
{
  return transition(target, TransitionCause::kAdmin, "", tick);
}

TransitionResult LevelManager::mode_feedback(const std::string & target, std::int64_t tick)
{
  return transition(target, TransitionCause::kModeFeedback, "", tick);
}

int LevelManager::run_one(
  const std::string & proc, const LevelDecl & from, const LevelDecl & to,
  std::uint64_t & started)
{
  started = ++stamp_;
  if (!runner_) {
    runner_ = std::make_shared<ProcessProcedureRunner>(std::filesystem::current_path());
  }
  return runner_->run(proc, from.name, to.name);
}

std::pair<int, int> LevelManager::run_level_procedures(const LevelDecl & from, const LevelDecl & to)
{
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  int exit_code = from.exit_proc ? run_one(*from.exit_proc, from, to, a) : 0;
  int enter_code = to.enter_proc ? run_one(*to.enter_proc, from, to, b) : 0;
  return {exit_code, enter_code};
}

TransitionResult LevelManager::transition(
  const std::string & target, TransitionCause cause, const std::string & rule,
  std::int64_t tick)
{
  auto idx = index_of(target);
  if (!idx) {
    return {TransitionStatus::kUnknownLevel, std::nullopt};
  }
  if (*idx == current_) {
    return {TransitionStatus::kNoOp, std::nullopt};
  }
  if (cause != TransitionCause::kAdmin && *idx < current_ && !levels_[current_].soft) {
    return {TransitionStatus::kDeniedDeescalation, std::nullopt};
  }

  const LevelDecl & from = levels_[current_];
  const LevelDecl & to = levels_[*idx];
  TransitionRecord rec;
  rec.from_level = from.name;
  rec.to_level = to.name;
  rec.cause = cause;
  rec.rule = rule;
  rec.tick = tick;
  if (from.exit_proc) {
    rec.exit_proc_status = run_one(*from.exit_proc, from, to, rec.exit_started);
  }
  if (to.enter_proc) {
    rec.enter_proc_status = run_one(*to.enter_proc, from, to, rec.enter_started);
  }
  current_ = *idx;
  log_.push_back(rec);

  if (log_stream_) {
    nlohmann::json j{
      {"tick", rec.tick}, {"from", rec.from_level}, {"to", rec.to_level},
      {"cause", to_string(rec.cause)}};
    if (!rec.rule.empty()) {
      j["rule"] = rec.rule;
    }
    j["exit_status"] = rec.exit_proc_status ? nlohmann::json(*rec.exit_proc_status) : nlohmann::json();
    j["enter_status"] = rec.enter_proc_status ? nlohmann::json(*rec.enter_proc_status) : nlohmann::json();
    *log_stream_ << j.dump() << '\n';
    log_stream_->flush();
  }
  for (const auto & l : listeners_) {
    l(rec);
  }
  return {TransitionStatus::kTransitioned, rec};
}

}  // namespace rips
