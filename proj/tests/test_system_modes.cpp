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

#include <string>

#include "rips/graph_simulator.hpp"
#include "rips/system_modes.hpp"
#include "support/criteria.hpp"
#include "support/test_support.hpp"

namespace
{

using rips::Lifecycle;

class ModesTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    cfg = rips::parse_modes_config(
      support::read_file(support::assets_dir() / "modes" / "safety.yaml"));
    for (const auto & part : cfg.managed_parts()) {
      sim.add_node(part);
    }
  }

  rips::ModesConfig cfg;
  rips::GraphSimulator sim{10};
};

TEST_F(ModesTest, ListingParses)
{
  EXPECT_EQ(cfg.system, "safety");
  EXPECT_EQ(cfg.parts.size(), 8u);
  ASSERT_EQ(cfg.modes.size(), 4u);
  EXPECT_EQ(cfg.modes[0].name, "__DEFAULT__");
  EXPECT_EQ(cfg.managed_parts().size(), 13u);
  // planner_server and the filter servers are used without being listed.
  EXPECT_FALSE(cfg.warnings.empty());
}

TEST_F(ModesTest, AlertBlock)
{
  rips::apply_mode(cfg, "__DEFAULT__", sim);
  rips::apply_mode(cfg, "ALERT", sim);
  EXPECT_EQ(sim.lifecycle("image_1_to_2"), Lifecycle::kInactive);
  EXPECT_EQ(sim.lifecycle("filter_mask_server"), Lifecycle::kActive);
  EXPECT_EQ(sim.lifecycle("costmap_filter_info_server"), Lifecycle::kActive);
  EXPECT_EQ(sim.lifecycle("filter_mask_server_clean"), Lifecycle::kInactive);
}

TEST_F(ModesTest, CompromisedCutsMotionAndRanging)
{
  rips::apply_mode(cfg, "COMPROMISED", sim);
  for (const char * p : {"twist_2_to_1", "pc2_1_to_2", "scan_1_to_2", "image_1_to_2"}) {
    EXPECT_EQ(sim.lifecycle(p), Lifecycle::kInactive) << p;
  }
  EXPECT_EQ(sim.lifecycle("odom_1_to_2"), Lifecycle::kActive);
}

TEST_F(ModesTest, HaltStopsEverythingButThePlanner)
{
  rips::apply_mode(cfg, "HALT", sim);
  for (const auto & p : cfg.managed_parts()) {
    EXPECT_EQ(sim.lifecycle(p), p == "planner_server" ? Lifecycle::kActive : Lifecycle::kInactive)
      << p;
  }
}

TEST_F(ModesTest, RoundTripAndIdempotence)
{
  auto v = criteria::modes_round_trip();
  EXPECT_TRUE(v.pass) << v.detail;
  for (const auto & m : cfg.modes) {
    auto first = rips::apply_mode(cfg, m.name, sim);
    auto snap = sim.snapshot();
    auto second = rips::apply_mode(cfg, m.name, sim);
    EXPECT_EQ(first.part_states, second.part_states);
    EXPECT_EQ(second.inferred_mode, m.name);
    for (const auto & p : cfg.managed_parts()) {
      EXPECT_EQ(sim.lifecycle(p), first.part_states.at(p));
    }
  }
}

TEST_F(ModesTest, InferUnknownOnMismatch)
{
  rips::apply_mode(cfg, "__DEFAULT__", sim);
  auto observed = rips::observe_parts(cfg, sim);
  EXPECT_EQ(rips::infer_mode(cfg, observed), "__DEFAULT__");
  observed["imu_1_to_2"] = Lifecycle::kInactive;
  EXPECT_EQ(rips::infer_mode(cfg, observed), rips::kUnknownMode);
}

TEST(Modes, AmbiguousModesInferUnknown)
{
  auto cfg = rips::parse_modes_config(R"(
s:
  ros__parameters:
    type: system
    parts: a
    modes:
      __DEFAULT__:
        a: active
      TWIN:
        a: active
)");
  std::vector<std::string> notes;
  EXPECT_EQ(rips::infer_mode(cfg, {{"a", Lifecycle::kActive}}, &notes), rips::kUnknownMode);
  EXPECT_FALSE(notes.empty());
}

TEST(Modes, MissingPartsAreReported)
{
  auto cfg = rips::parse_modes_config(R"(
s:
  ros__parameters:
    type: system
    parts: [a, b]
    modes:
      __DEFAULT__:
        a: active
        b: {state: reduced, parameters: {rate: 5, label: "slow"}}
)");
  rips::GraphSimulator sim(10);
  sim.add_node("b");
  auto st = rips::apply_mode(cfg, "__DEFAULT__", sim);
  EXPECT_EQ(st.missing_parts, std::vector<std::string>{"a"});
  EXPECT_EQ(st.inferred_mode, rips::kUnknownMode);
  EXPECT_EQ(sim.lifecycle("b"), Lifecycle::kReduced);
  EXPECT_EQ(sim.parameter("b", "rate"), rips::Value{std::int64_t{5}});
  EXPECT_EQ(sim.parameter("b", "label"), rips::Value{std::string("slow")});
  EXPECT_THROW(rips::apply_mode(cfg, "NOPE", sim), rips::ModesError);
}

TEST(Modes, MalformedConfigs)
{
  for (const char * src : {
      "s:\n  ros__parameters:\n    type: system\n    parts: a\n    modes:\n      ONLY:\n        a: active\n",
      "s:\n  ros__parameters:\n    type: system\n    parts: a\n    modes:\n      __DEFAULT__:\n        a: dozing\n",
      "s: [1, 2]\n",
      "",
    })
  {
    EXPECT_THROW(rips::parse_modes_config(src), rips::ModesError) << src;
  }
}

TEST(Modes, CheckPartsAgainstKnownNodes)
{
  auto cfg = rips::parse_modes_config(support::read_file(
      support::assets_dir() / "modes" / "safety.yaml"));
  EXPECT_THROW(rips::check_modes_parts(cfg, {}), rips::ModesError);
  EXPECT_NO_THROW(rips::check_modes_parts(cfg, cfg.managed_parts()));
}

}  // namespace
