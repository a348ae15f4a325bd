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

#include <gtest/gtest.h>

#include <memory>
#include <sstream>
#include <string>

#include "nlohmann/json.hpp"
#include "rips/alert_levels.hpp"
#include "support/criteria.hpp"
#include "support/test_support.hpp"

namespace
{

using rips::TransitionStatus;

std::vector<rips::LevelDecl> four_levels()
{
  return {
    {"DEFAULT", false, {}, {}},
    {"ALERT", true, std::string("enter_alert"), std::string("exit_alert")},
    {"COMPROMISED", false, std::string("enter_comp"), {}},
    {"HALT", false, {}, {}},
  };
}

TEST(LevelManager, EscalatesAndRefusesHardDeescalation)
{
  auto runner = std::make_shared<criteria::RecordingRunner>();
  rips::LevelManager lm(four_levels(), runner);
  EXPECT_EQ(lm.current().name, "DEFAULT");
  EXPECT_EQ(lm.trigger_level("COMPROMISED", "r", 1).status, TransitionStatus::kTransitioned);
  EXPECT_EQ(lm.trigger_level("ALERT", "r", 2).status, TransitionStatus::kDeniedDeescalation);
  EXPECT_EQ(lm.trigger_level("COMPROMISED", "r", 3).status, TransitionStatus::kNoOp);
  EXPECT_EQ(lm.trigger_level("BOGUS", "r", 4).status, TransitionStatus::kUnknownLevel);
  EXPECT_EQ(lm.current().name, "COMPROMISED");
  EXPECT_EQ(lm.log().size(), 1u);
}

TEST(LevelManager, SoftLevelsMayStepDown)
{
  rips::LevelManager lm(four_levels(), std::make_shared<criteria::RecordingRunner>());
  lm.trigger_level("ALERT", "r");
  auto res = lm.trigger_level("DEFAULT", "r");
  EXPECT_EQ(res.status, TransitionStatus::kTransitioned);
  EXPECT_EQ(lm.current().name, "DEFAULT");
}

TEST(LevelManager, AdminMayLowerAnyLevel)
{
  rips::LevelManager lm(four_levels(), std::make_shared<criteria::RecordingRunner>());
  lm.trigger_level("HALT", "r");
  auto res = lm.admin_set_level("ALERT", 9);
  ASSERT_EQ(res.status, TransitionStatus::kTransitioned);
  EXPECT_EQ(res.record->cause, rips::TransitionCause::kAdmin);
  EXPECT_TRUE(res.record->rule.empty());
  EXPECT_EQ(lm.mode_feedback("DEFAULT").status, TransitionStatus::kTransitioned);
}

TEST(LevelManager, ModeFeedbackFollowsRulePolicy)
{
  rips::LevelManager lm(four_levels(), std::make_shared<criteria::RecordingRunner>());
  lm.admin_set_level("HALT");
  EXPECT_EQ(lm.mode_feedback("ALERT").status, TransitionStatus::kDeniedDeescalation);
}

TEST(LevelManager, ProceduresRunExitThenEnter)
{
  auto runner = std::make_shared<criteria::RecordingRunner>();
  rips::LevelManager lm(four_levels(), runner);
  lm.trigger_level("ALERT", "r");
  auto res = lm.trigger_level("COMPROMISED", "r2", 5);
  ASSERT_EQ(runner->calls.size(), 3u);
  EXPECT_EQ(runner->calls[0].proc, "enter_alert");
  EXPECT_EQ(runner->calls[1].proc, "exit_alert");
  EXPECT_EQ(runner->calls[2].proc, "enter_comp");
  EXPECT_EQ(runner->calls[2].from, "ALERT");
  EXPECT_EQ(runner->calls[2].to, "COMPROMISED");
  EXPECT_LT(res.record->exit_started, res.record->enter_started);
  EXPECT_EQ(res.record->exit_proc_status, 0);
  EXPECT_EQ(res.record->enter_proc_status, 0);
  EXPECT_EQ(res.record->rule, "r2");
  EXPECT_EQ(res.record->tick, 5);
}

TEST(LevelManager, AbsentProceduresHaveNoStatus)
{
  rips::LevelManager lm(four_levels(), std::make_shared<criteria::RecordingRunner>());
  auto res = lm.trigger_level("HALT", "r");
  EXPECT_FALSE(res.record->exit_proc_status);
  EXPECT_FALSE(res.record->enter_proc_status);
}

TEST(LevelManager, ListenersSeeEveryTransition)
{
  rips::LevelManager lm(four_levels(), std::make_shared<criteria::RecordingRunner>());
  std::vector<std::string> seen;
  lm.add_listener([&](const rips::TransitionRecord & r) {seen.push_back(r.to_level);});
  lm.trigger_level("ALERT", "r");
  lm.trigger_level("ALERT", "r");
  lm.trigger_level("HALT", "r");
  lm.trigger_level("DEFAULT", "r");
  EXPECT_EQ(seen, (std::vector<std::string>{"ALERT", "HALT"}));
}

TEST(LevelManager, TransitionLogIsJsonLines)
{
  std::ostringstream os;
  rips::LevelManager lm(four_levels(), std::make_shared<criteria::RecordingRunner>());
  lm.set_log_stream(&os);
  lm.trigger_level("ALERT", "unknown_node", 12);
  auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j["tick"], 12);
  EXPECT_EQ(j["from"], "DEFAULT");
  EXPECT_EQ(j["to"], "ALERT");
  EXPECT_EQ(j["rule"], "unknown_node");
  EXPECT_EQ(j["enter_status"], 0);
  EXPECT_TRUE(j["exit_status"].is_null());
}

TEST(LevelManager, RandomSequencesKeepThePolicy)
{
  auto v = criteria::level_policy(1000, 20260501);
  EXPECT_TRUE(v.pass) << v.detail;
}

TEST(ProcessProcedureRunner, PassesLevelsInEnvironment)
{
  support::TempDir dir;
  support::write_script(dir / "proc.sh",
    "echo \"$RIPS_FROM>$RIPS_TO $EXTRA\" >> \"" + (dir / "out").string() + "\"\nexit 3");
  rips::ProcessProcedureRunner runner(dir.path(), {{"EXTRA", "x"}}, std::chrono::seconds(5));
  EXPECT_EQ(runner.run("proc.sh", "DEFAULT", "ALERT"), 3);
  EXPECT_EQ(support::read_file(dir / "out"), "DEFAULT>ALERT x\n");
  EXPECT_NE(runner.run("missing.sh", "A", "B"), 0);
}

TEST(ProcessProcedureRunner, ShippedNotifyProcedure)
{
  support::TempDir dir;
  rips::ProcessProcedureRunner runner(support::assets_dir() / "rules",
    {{"RIPS_PROC_LOG", (dir / "log").string()}});
  EXPECT_EQ(runner.run("procedures/notify.sh", "DEFAULT", "ALERT"), 0);
  EXPECT_NE(support::read_file(dir / "log").find("ALERT"), std::string::npos);
}

}  // namespace
