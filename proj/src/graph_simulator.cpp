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

#include "rips/graph_simulator.hpp"

#include <cmath>

namespace rips
{

std::string_view to_string(Lifecycle l)
{
  switch (l) {
    case Lifecycle::kActive: return "active";
    case Lifecycle::kInactive: return "inactive";
    case Lifecycle::kReduced: return "reduced";
  }
  return "unknown";
}

std::optional<Lifecycle> lifecycle_from_string(std::string_view s)
{
  if (s == "active") {
    return Lifecycle::kActive;
  }
  if (s == "inactive") {
    return Lifecycle::kInactive;
  }
  if (s == "reduced") {
    return Lifecycle::kReduced;
  }
  return std::nullopt;
}

GraphSimulator::GraphSimulator(std::int64_t tick_rate)
: tick_rate_(tick_rate)
{
  if (tick_rate <= 0) {
    throw SimulatorError("tick rate must be positive");
  }
}

void GraphSimulator::emit(Event ev)
{
  if (sink_) {
    sink_(std::move(ev));
  }
}

GraphEvent GraphSimulator::commit(GraphChange change)
{
  ++graph_.version;
  GraphEvent ev{change, graph_};
  return ev;
}

SimNode & GraphSimulator::node_ref(const std::string & name)
{
  auto it = nodes_.find(name);
  if (it == nodes_.end()) {
    throw SimulatorError("unknown node '" + name + "'");
  }
  return it->second;
}

const SimNode & GraphSimulator::node_ref(const std::string & name) const
{
  auto it = nodes_.find(name);
  if (it == nodes_.end()) {
    throw SimulatorError("unknown node '" + name + "'");
  }
  return it->second;
}

void GraphSimulator::drop_dangling(const std::string & topic, bool & removed)
{
  auto it = graph_.topics.find(topic);
  if (it != graph_.topics.end() && it->second.publishers.empty() &&
    it->second.subscribers.empty() && !declared_topics_.count(topic))
  {
    graph_.topics.erase(it);
    removed = true;
  }
}

GraphEvent GraphSimulator::add_node(const std::string & name)
{
  GraphEvent ev;
  {
    std::lock_guard lock(mutex_);
    if (name.empty()) {
      throw SimulatorError("empty node name");
    }
    if (nodes_.count(name)) {
      throw SimulatorError("duplicate node '" + name + "'");
    }
    nodes_[name].name = name;
    graph_.nodes.insert(name);
    ev = commit(GraphChange::kNodeAdded);
  }
  emit(Event{ev, tick_});
  return ev;
}

GraphEvent GraphSimulator::remove_node(const std::string & name)
{
  GraphEvent ev;
  {
    std::lock_guard lock(mutex_);
    node_ref(name);
    nodes_.erase(name);
    graph_.nodes.erase(name);
    graph_.services.erase(name);
    std::vector<std::string> touched;
    for (auto & [topic, info] : graph_.topics) {
      if (info.publishers.erase(name) + info.subscribers.erase(name) > 0) {
        touched.push_back(topic);
      }
    }
    bool removed = false;
    for (const auto & t : touched) {
      drop_dangling(t, removed);
    }
    ev = commit(GraphChange::kNodeRemoved);
  }
  emit(Event{ev, tick_});
  return ev;
}

GraphEvent GraphSimulator::add_publisher(
  const std::string & node, const std::string & topic, const std::string & msg_type,
  const std::string & msg_subtype, double rate_hz, Bytes payload)
{
  GraphEvent ev;
  {
    std::lock_guard lock(mutex_);
    SimNode & n = node_ref(node);
    if (topic.empty() || topic.front() != '/') {
      throw SimulatorError("topic names must start with '/': " + topic);
    }
    if (rate_hz < 0.0 || !std::isfinite(rate_hz)) {
      throw SimulatorError("invalid publish rate");
    }
    bool created = !graph_.topics.count(topic);
    TopicInfo & info = graph_.topics[topic];
    if (created || info.msg_type.empty()) {
      info.msg_type = msg_type;
      info.msg_subtype = msg_subtype;
    }
    info.publishers.insert(node);
    if (rate_hz > 0.0) {
      n.schedules.push_back(PublishSchedule{topic, rate_hz, std::move(payload)});
    }
    ev = commit(created ? GraphChange::kTopicAdded : GraphChange::kEndpointChanged);
  }
  emit(Event{ev, tick_});
  return ev;
}

GraphEvent GraphSimulator::add_subscriber(
  const std::string & node, const std::string & topic, const std::string & msg_type,
  const std::string & msg_subtype)
{
  GraphEvent ev;
  {
    std::lock_guard lock(mutex_);
    node_ref(node);
    if (topic.empty() || topic.front() != '/') {
      throw SimulatorError("topic names must start with '/': " + topic);
    }
    bool created = !graph_.topics.count(topic);
    TopicInfo & info = graph_.topics[topic];
    if (created || info.msg_type.empty()) {
      info.msg_type = msg_type;
      info.msg_subtype = msg_subtype;
    }
    info.subscribers.insert(node);
    ev = commit(created ? GraphChange::kTopicAdded : GraphChange::kEndpointChanged);
  }
  emit(Event{ev, tick_});
  return ev;
}

GraphEvent GraphSimulator::remove_endpoint(const std::string & node, const std::string & topic)
{
  GraphEvent ev;
  {
    std::lock_guard lock(mutex_);
    SimNode & n = node_ref(node);
    auto it = graph_.topics.find(topic);
    if (it == graph_.topics.end() ||
      (!it->second.publishers.count(node) && !it->second.subscribers.count(node)))
    {
      throw SimulatorError("'" + node + "' has no endpoint on '" + topic + "'");
    }
    it->second.publishers.erase(node);
    it->second.subscribers.erase(node);
    std::erase_if(n.schedules, [&](const PublishSchedule & s) {return s.topic == topic;});
    bool removed = false;
    drop_dangling(topic, removed);
    ev = commit(removed ? GraphChange::kTopicRemoved : GraphChange::kEndpointChanged);
  }
  emit(Event{ev, tick_});
  return ev;
}

GraphEvent GraphSimulator::declare_service(const std::string & node, const std::string & service)
{
  GraphEvent ev;
  {
    std::lock_guard lock(mutex_);
    node_ref(node);
    if (service.empty()) {
      throw SimulatorError("empty service name");
    }
    graph_.services[node].insert(service);
    ev = commit(GraphChange::kServiceChanged);
  }
  emit(Event{ev, tick_});
  return ev;
}

GraphEvent GraphSimulator::declare_topic(
  const std::string & topic, const std::string & msg_type, const std::string & msg_subtype)
{
  GraphEvent ev;
  {
    std::lock_guard lock(mutex_);
    if (topic.empty() || topic.front() != '/') {
      throw SimulatorError("topic names must start with '/': " + topic);
    }
    declared_topics_.insert(topic);
    bool created = !graph_.topics.count(topic);
    TopicInfo & info = graph_.topics[topic];
    if (created || info.msg_type.empty()) {
      info.msg_type = msg_type;
      info.msg_subtype = msg_subtype;
    }
    ev = commit(created ? GraphChange::kTopicAdded : GraphChange::kEndpointChanged);
  }
  emit(Event{ev, tick_});
  return ev;
}

MessageEvent GraphSimulator::make_message(
  const std::string & node, const std::string & topic, Bytes payload)
{
  const TopicInfo & info = graph_.topics.at(topic);
  MessageEvent m;
  m.topic = topic;
  m.msg_type = info.msg_type;
  m.msg_subtype = info.msg_subtype;
  m.payload = std::move(payload);
  m.publisher = node;
  m.topic_publishers = info.publishers;
  m.topic_subscribers = info.subscribers;
  return m;
}

std::optional<MessageEvent> GraphSimulator::publish(
  const std::string & node, const std::string & topic, const Bytes & payload)
{
  std::optional<MessageEvent> out;
  {
    std::lock_guard lock(mutex_);
    const SimNode & n = node_ref(node);
    auto it = graph_.topics.find(topic);
    if (it == graph_.topics.end() || !it->second.publishers.count(node)) {
      throw SimulatorError("'" + node + "' is not a publisher of '" + topic + "'");
    }
    if (n.lifecycle == Lifecycle::kInactive) {
      return std::nullopt;
    }
    out = make_message(node, topic, payload);
  }
  emit(Event{*out, tick_});
  return out;
}

std::vector<MessageEvent> GraphSimulator::step(std::int64_t tick)
{
  std::vector<MessageEvent> out;
  {
    std::lock_guard lock(mutex_);
    tick_ = tick;
    auto published_by = [this](double rate, std::int64_t k) {
        return static_cast<std::int64_t>(
          std::floor(static_cast<double>(k) * rate / static_cast<double>(tick_rate_)));
      };
    for (const auto & [name, n] : nodes_) {
      if (n.lifecycle == Lifecycle::kInactive) {
        continue;
      }
      for (const auto & s : n.schedules) {
        double rate = n.lifecycle == Lifecycle::kReduced ? s.rate_hz / 2.0 : s.rate_hz;
        std::int64_t count = published_by(rate, tick) - published_by(rate, tick - 1);
        for (std::int64_t i = 0; i < count; ++i) {
          out.push_back(make_message(name, s.topic, s.payload));
        }
      }
    }
  }
  for (const auto & m : out) {
    emit(Event{m, tick});
  }
  return out;
}

void GraphSimulator::set_lifecycle(const std::string & node, Lifecycle state)
{
  std::lock_guard lock(mutex_);
  node_ref(node).lifecycle = state;
}

Lifecycle GraphSimulator::lifecycle(const std::string & node) const
{
  std::lock_guard lock(mutex_);
  return node_ref(node).lifecycle;
}

void GraphSimulator::set_parameter(const std::string & node, const std::string & name, Value value)
{
  std::lock_guard lock(mutex_);
  node_ref(node).parameters[name] = std::move(value);
}

std::optional<Value> GraphSimulator::parameter(
  const std::string & node, const std::string & name) const
{
  std::lock_guard lock(mutex_);
  const auto & params = node_ref(node).parameters;
  auto it = params.find(name);
  if (it == params.end()) {
    return std::nullopt;
  }
  return it->second;
}

bool GraphSimulator::has_node(const std::string & name) const
{
  std::lock_guard lock(mutex_);
  return nodes_.count(name) > 0;
}

std::vector<std::string> GraphSimulator::node_names() const
{
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto & [name, n] : nodes_) {
    out.push_back(name);
  }
  return out;
}

const SimNode & GraphSimulator::node(const std::string & name) const
{
  std::lock_guard lock(mutex_);
  return node_ref(name);
}

GraphSnapshot GraphSimulator::snapshot() const
{
  std::lock_guard lock(mutex_);
  return graph_;
}

}  // namespace rips
