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

#include <cmath>
#include <string>
#include <vector>

#include "rips/graph_simulator.hpp"

namespace
{

using rips::Lifecycle;

TEST(GraphSimulator, MutationsBumpVersionAndEmitEvents)
{
  rips::GraphSimulator sim(10);
  std::vector<rips::Event> events;
  sim.set_sink([&](rips::Event ev) {events.push_back(std::move(ev));});
  sim.set_tick(3);
  auto a = sim.add_node("cam");
  auto b = sim.add_publisher("cam", "/image_raw", "sensor_msgs/Image", "raw", 10.0);
  EXPECT_LT(a.snapshot.version, b.snapshot.version);
  EXPECT_EQ(b.change, rips::GraphChange::kTopicAdded);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[1].timestamp, 3);
  EXPECT_EQ(sim.snapshot().topics.at("/image_raw").publishers, std::set<std::string>{"cam"});
  EXPECT_TRUE(sim.snapshot().consistent());
}

TEST(GraphSimulator, RemovingANodeCascades)
{
  rips::GraphSimulator sim(10);
  sim.add_node("a");
  sim.add_node("b");
  sim.add_publisher("a", "/t", "T", "");
  sim.add_subscriber("b", "/u", "U", "");
  sim.add_publisher("b", "/t", "T", "");
  sim.declare_service("a", "reset");
  sim.remove_node("a");
  auto snap = sim.snapshot();
  EXPECT_EQ(snap.nodes, std::set<std::string>{"b"});
  EXPECT_EQ(snap.topics.at("/t").publishers, std::set<std::string>{"b"});
  EXPECT_FALSE(snap.services.count("a"));
  EXPECT_TRUE(snap.consistent());
  sim.remove_node("b");
  EXPECT_TRUE(sim.snapshot().topics.empty());
}

TEST(GraphSimulator, DeclaredTopicsSurvive)
{
  rips::GraphSimulator sim(10);
  sim.declare_topic("/map", "nav_msgs/OccupancyGrid", "");
  sim.add_node("a");
  sim.add_subscriber("a", "/map");
  sim.remove_endpoint("a", "/map");
  EXPECT_TRUE(sim.snapshot().topics.count("/map"));
}

TEST(GraphSimulator, Errors)
{
  rips::GraphSimulator sim(10);
  sim.add_node("a");
  EXPECT_THROW(sim.add_node("a"), rips::SimulatorError);
  EXPECT_THROW(sim.remove_node("b"), rips::SimulatorError);
  EXPECT_THROW(sim.add_publisher("b", "/t", "T", ""), rips::SimulatorError);
  EXPECT_THROW(rips::GraphSimulator(0), rips::SimulatorError);
}

// Publications per tick follow floor(k r / R) - floor((k - 1) r / R).
TEST(GraphSimulator, PublishRateArithmetic)
{
  for (double rate : {1.0, 3.0, 5.0, 10.0, 25.0}) {
    rips::GraphSimulator sim(10);
    sim.add_node("p");
    sim.add_publisher("p", "/t", "T", "", rate);
    std::int64_t total = 0;
    for (std::int64_t k = 1; k <= 100; ++k) {
      auto msgs = sim.step(k);
      auto want = static_cast<std::int64_t>(std::floor(k * rate / 10.0)) -
        static_cast<std::int64_t>(std::floor((k - 1) * rate / 10.0));
      ASSERT_EQ(static_cast<std::int64_t>(msgs.size()), want) << rate << " at " << k;
      total += static_cast<std::int64_t>(msgs.size());
    }
    EXPECT_EQ(total, static_cast<std::int64_t>(rate * 10));
  }
}

TEST(GraphSimulator, LifecycleGatesPublishing)
{
  rips::GraphSimulator sim(10);
  sim.add_node("cam");
  sim.add_publisher("cam", "/image_raw", "Image", "", 10.0, {1, 2, 3});
  EXPECT_EQ(sim.step(1).size(), 1u);
  sim.set_lifecycle("cam", Lifecycle::kInactive);
  EXPECT_TRUE(sim.step(2).empty());
  EXPECT_FALSE(sim.publish("cam", "/image_raw", {9}));
  sim.set_lifecycle("cam", Lifecycle::kReduced);
  std::size_t n = 0;
  for (int k = 3; k < 13; ++k) {
    n += sim.step(k).size();
  }
  EXPECT_EQ(n, 5u);
  sim.set_lifecycle("cam", Lifecycle::kActive);
  auto msgs = sim.step(13);
  ASSERT_EQ(msgs.size(), 1u);
  EXPECT_EQ(msgs[0].payload, (rips::Bytes{1, 2, 3}));
  EXPECT_EQ(msgs[0].publisher, "cam");
}

TEST(GraphSimulator, PublishCarriesEndpoints)
{
  rips::GraphSimulator sim(10);
  sim.add_node("a");
  sim.add_node("b");
  sim.add_publisher("a", "/cmd_vel", "geometry_msgs/Twist", "");
  sim.add_subscriber("b", "/cmd_vel");
  auto m = sim.publish("a", "/cmd_vel", {7});
  ASSERT_TRUE(m);
  EXPECT_EQ(m->msg_type, "geometry_msgs/Twist");
  EXPECT_EQ(m->topic_publishers, std::set<std::string>{"a"});
  EXPECT_EQ(m->topic_subscribers, std::set<std::string>{"b"});
}

TEST(GraphSimulator, Parameters)
{
  rips::GraphSimulator sim(10);
  sim.add_node("a");
  sim.set_parameter("a", "rate", rips::Value{std::int64_t{5}});
  EXPECT_EQ(sim.parameter("a", "rate"), rips::Value{std::int64_t{5}});
  EXPECT_FALSE(sim.parameter("a", "other"));
}

TEST(Lifecycle, Names)
{
  for (auto l : {Lifecycle::kActive, Lifecycle::kInactive, Lifecycle::kReduced}) {
    EXPECT_EQ(rips::lifecycle_from_string(rips::to_string(l)), l);
  }
  EXPECT_FALSE(rips::lifecycle_from_string("sleeping"));
}

}  // namespace
