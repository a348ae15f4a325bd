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

#include <sstream>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "rips/action_executor.hpp"
#include "rips/rule_language.hpp"
#include "support/criteria.hpp"
#include "support/test_support.hpp"

namespace
{

class ExecutorTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    support::write_script(dir / "ok", "exit 0");
    support::write_script(dir / "fail", "exit 1");
    support::write_script(dir / "record",
      "echo \"$RIPS_RULE $RIPS_LEVEL $RIPS_TICK $*\" >> \"" + (dir / "out").string() + "\"");
    state.options.actions_dir = dir.path();
  }

  std::vector<rips::ActionOutcome> run(const std::string & body, std::int64_t tick = 4)
  {
    auto rs = rips::parse_ruleset("level DEFAULT;\nlevel soft ALERT;\nlevel HALT;\n"
        "rule t { when true do " + body + " }");
    return rips::execute_chains(rips::RuleActivation{"t", rs.rules[0].chains, tick}, state);
  }

  std::vector<std::string> alerts() const
  {
    std::vector<std::string> out;
    for (const auto & r : log.of_kind(rips::LogRecord::Kind::kAlert)) {
      out.push_back(r.message);
    }
    return out;
  }

  support::TempDir dir;
  rips::VariableStore vars;
  rips::EventLog log;
  rips::LevelManager levels{{{"DEFAULT", false, {}, {}}, {"ALERT", true, {}, {}},
    {"HALT", false, {}, {}}}};
  rips::ExecutorState state{vars, log, levels, {}};
};

TEST(ChainOperators, TruthTable)
{
  for (const auto & c : criteria::chain_truth_table()) {
    EXPECT_EQ(criteria::run_chain_case(c.op, c.left_ok), c.right_runs) <<
      c.op << " left " << (c.left_ok ? "ok" : "fail");
  }
}

TEST(RuleR, AlarmWorks)
{
  auto r = criteria::run_rule_r(false);
  EXPECT_EQ(r.alerts, std::vector<std::string>{"info: rule R activated"});
  EXPECT_EQ(r.level, "HALT");
}

TEST(RuleR, AlarmFails)
{
  auto r = criteria::run_rule_r(true);
  EXPECT_EQ(r.alerts, (std::vector<std::string>{"info: rule R activated",
      "warning: usb_alarm failed"}));
  EXPECT_EQ(r.level, "HALT");
}

TEST_F(ExecutorTest, SkippedActionEndsItsChain)
{
  run("exec(ok) !-> alert(\"a\"), alert(\"b\") end");
  EXPECT_TRUE(alerts().empty());
}

TEST_F(ExecutorTest, ChainsAreIndependent)
{
  run("exec(fail) -> alert(\"a\") end; alert(\"b\") end; exec(fail), alert(\"c\") end");
  EXPECT_EQ(alerts(), (std::vector<std::string>{"b", "c"}));
}

TEST_F(ExecutorTest, LongChainsPropagateResults)
{
  run("exec(ok) -> exec(fail) -> alert(\"never\") end; "
    "exec(fail) !-> exec(ok) -> alert(\"reached\") end");
  EXPECT_EQ(alerts(), std::vector<std::string>{"reached"});
}

TEST_F(ExecutorTest, SetExamples)
{
  levels.trigger_level("ALERT", "t");
  vars.set_level("ALERT");
  auto out = run("set(n, 1) -> set(n, n + 41) -> set(tag, Level + \"-seen\") end");
  ASSERT_EQ(out.size(), 3u);
  EXPECT_TRUE(out[2].success);
  EXPECT_EQ(vars.get("n"), rips::Value{std::int64_t{42}});
  EXPECT_EQ(vars.get("tag"), rips::Value{std::string("ALERT-seen")});
}

TEST_F(ExecutorTest, SetFailures)
{
  vars.set_user("n", rips::Value{std::int64_t{1}});
  auto out = run("set(n, \"text\") !-> alert(\"type\") end; set(m, 1 / 0) !-> alert(\"div\") end");
  EXPECT_EQ(alerts(), (std::vector<std::string>{"type", "div"}));
  EXPECT_EQ(vars.get("n"), rips::Value{std::int64_t{1}});
  EXPECT_FALSE(vars.get("m"));
}

TEST_F(ExecutorTest, SetRefusesPredefinedVariables)
{
  rips::SetAction a{"Time", rips::ValueExpr::make_literal(rips::Value{std::int64_t{1}})};
  EXPECT_FALSE(rips::act_set(a, state, "t", 1).success);
}

TEST_F(ExecutorTest, ExecPassesArgumentsAndEnvironment)
{
  auto out = run("exec(record, \"/cmd_vel\", \"two words\") end", 17);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].success);
  EXPECT_EQ(support::read_file(dir / "out"), "t DEFAULT 17 /cmd_vel two words\n");
}

TEST_F(ExecutorTest, ExecRejectsPathsAndMissingPrograms)
{
  EXPECT_FALSE(rips::act_exec(rips::ExecAction{"../ok", {}}, state, "t", 1).success);
  EXPECT_FALSE(rips::act_exec(rips::ExecAction{"/bin/true", {}}, state, "t", 1).success);
  EXPECT_FALSE(rips::act_exec(rips::ExecAction{"nothing", {}}, state, "t", 1).success);
}

TEST_F(ExecutorTest, ShippedFirewallAction)
{
  state.options.actions_dir = support::assets_dir() / "actions";
  state.options.env = {{"RIPS_ACTION_LOG", (dir / "fw").string()}};
  EXPECT_TRUE(rips::act_exec(rips::ExecAction{"firewall_block", {"/cmd_vel"}}, state, "t", 1)
    .success);
  EXPECT_NE(support::read_file(dir / "fw").find("/cmd_vel"), std::string::npos);
}

TEST_F(ExecutorTest, TriggerSucceedsOnlyWhenAllowed)
{
  auto up = rips::act_trigger(rips::TriggerAction{"HALT"}, state, "t", 1);
  EXPECT_TRUE(up.success);
  auto down = rips::act_trigger(rips::TriggerAction{"DEFAULT"}, state, "t", 2);
  EXPECT_FALSE(down.success);
  auto same = rips::act_trigger(rips::TriggerAction{"HALT"}, state, "t", 3);
  EXPECT_TRUE(same.success);
  EXPECT_EQ(levels.log().size(), 1u);
}

TEST_F(ExecutorTest, EveryExecutedActionIsLogged)
{
  run("alert(\"a\") -> exec(ok) -> set(x, 1) -> trigger(ALERT) end");
  EXPECT_EQ(log.count(rips::LogRecord::Kind::kAction), 4u);
}

TEST_F(ExecutorTest, ThousandAlerts)
{
  std::ostringstream sink;
  log.set_alert_stream(&sink);
  auto rs = rips::parse_ruleset("level DEFAULT;\nrule t { when true do alert(\"x\") end }");
  for (int i = 0; i < 1000; ++i) {
    rips::execute_chains(rips::RuleActivation{"t", rs.rules[0].chains, i}, state);
  }
  EXPECT_EQ(log.count(rips::LogRecord::Kind::kAlert), 1000u);
  std::istringstream in(sink.str());
  int lines = 0;
  for (std::string line; std::getline(in, line); ) {
    auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["tick"], lines);
    ++lines;
  }
  EXPECT_EQ(lines, 1000);
}

}  // namespace
