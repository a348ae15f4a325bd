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

#include <csignal>
#include <string>
#include <thread>

#include "rips/control.hpp"
#include "rips/process.hpp"
#include "rips/scenario.hpp"
#include "support/test_support.hpp"

namespace
{

TEST(ControlChannel, ValidatesAndQueues)
{
  rips::ControlChannel ch;
  ch.set_known({"DEFAULT", "ALERT"}, {"__DEFAULT__", "ALERT"});
  EXPECT_EQ(ch.handle_line("level ALERT"), "ok");
  EXPECT_EQ(ch.handle_line("mode __DEFAULT__"), "ok");
  EXPECT_EQ(ch.handle_line("signal USR1"), "ok");
  EXPECT_EQ(ch.handle_line(R"(event {"kind":"external","timestamp":0,"ids_alert":"x"})")
    .substr(0, 2), "ok");
  EXPECT_EQ(ch.handle_line("level NOPE").substr(0, 3), "err");
  EXPECT_EQ(ch.handle_line("signal HUP").substr(0, 3), "err");
  EXPECT_EQ(ch.handle_line("fly away").substr(0, 3), "err");
  EXPECT_EQ(ch.handle_line("event {").substr(0, 3), "err");
  auto reqs = ch.drain();
  ASSERT_GE(reqs.size(), 3u);
  EXPECT_EQ(reqs[0], (rips::ControlRequest{"level", "ALERT"}));
  EXPECT_EQ(reqs[2], (rips::ControlRequest{"signal", "USR1"}));
  EXPECT_TRUE(ch.drain().empty());
}

TEST(ControlChannel, StatusIsThePublishedLine)
{
  rips::ControlChannel ch;
  ch.publish_status("level=ALERT mode=ALERT tick=12");
  EXPECT_EQ(ch.handle_line("status"), "ok level=ALERT mode=ALERT tick=12");
  EXPECT_TRUE(ch.drain().empty());
}

TEST(ControlServer, AnswersOverTheSocket)
{
  support::TempDir dir;
  rips::ControlChannel ch;
  ch.publish_status("level=DEFAULT mode=__DEFAULT__ tick=0");
  rips::ControlServer server(dir / "ctl.sock", ch);
  EXPECT_EQ(rips::control_request(dir / "ctl.sock", "status"),
    "ok level=DEFAULT mode=__DEFAULT__ tick=0");
  EXPECT_EQ(rips::control_request(dir / "ctl.sock", "level HALT"), "ok");
  EXPECT_EQ(ch.drain().size(), 1u);
  EXPECT_THROW(rips::control_request(dir / "missing.sock", "status"), std::runtime_error);
}

TEST(ControlServer, CliClient)
{
  support::TempDir dir;
  rips::ControlChannel ch;
  rips::ControlServer server(dir / "ctl.sock", ch);
  rips::ProcessSpec spec;
  spec.program = RIPS_CLI;
  spec.args = {"ctl", "--socket", (dir / "ctl.sock").string(), "level", "ALERT"};
  EXPECT_TRUE(rips::run_process(spec).ok());
  spec.args = {"ctl", "--socket", (dir / "ctl.sock").string(), "warp", "9"};
  EXPECT_FALSE(rips::run_process(spec).ok());
  EXPECT_EQ(ch.drain(), std::vector<rips::ControlRequest>{(rips::ControlRequest{"level", "ALERT"})});
}

TEST(ControlServer, DrivesARunningScenario)
{
  support::TempDir dir;
  auto in = support::shipped_inputs();
  std::string nodes;
  for (const auto & p : in.modes.managed_parts()) {
    nodes += "node " + p + "\n";
  }
  in.script = rips::parse_scenario("tick_rate 1\nduration 40\n" + nodes);
  rips::ControlChannel ch;
  rips::ControlServer server(dir / "ctl.sock", ch);
  rips::RunOptions opt;
  opt.control = &ch;
  opt.tick_period = std::chrono::milliseconds(20);
  std::thread client([&] {
      std::this_thread::sleep_for(std::chrono::milliseconds(200));
      rips::control_request(dir / "ctl.sock", "level COMPROMISED");
    });
  auto r = rips::run_scenario(in, opt);
  client.join();
  ASSERT_EQ(r.transitions.size(), 1u);
  EXPECT_EQ(r.transitions[0].to_level, "COMPROMISED");
  EXPECT_EQ(r.transitions[0].cause, rips::TransitionCause::kAdmin);
  EXPECT_EQ(r.metrics.back().mode, "COMPROMISED");
}

TEST(UserSignals, RecordedAndCleared)
{
  rips::install_user_signal_handlers();
  std::raise(SIGUSR2);
  std::raise(SIGUSR1);
  EXPECT_EQ(rips::take_user_signals(), (std::vector<std::string>{"USR1", "USR2"}));
  EXPECT_TRUE(rips::take_user_signals().empty());
}

}  // namespace
