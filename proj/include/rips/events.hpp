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

#ifndef RIPS__EVENTS_HPP_
#define RIPS__EVENTS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rips/rule_ast.hpp"

namespace rips
{

using NameSet = std::set<std::string>;
using Bytes = std::vector<std::uint8_t>;

struct TopicInfo
{
  NameSet publishers;
  NameSet subscribers;
  std::string msg_type;
  std::string msg_subtype;
  friend bool operator==(const TopicInfo &, const TopicInfo &) = default;
};

/// The computation graph at one instant.
struct GraphSnapshot
{
  NameSet nodes;
  std::map<std::string, TopicInfo> topics;
  std::map<std::string, NameSet> services;  // node -> service names
  std::uint64_t version{0};

  /// Endpoint closure: every publisher/subscriber/service owner is a node.
  bool consistent() const;

  friend bool operator==(const GraphSnapshot &, const GraphSnapshot &) = default;
};

struct MessageEvent
{
  std::string topic;
  std::string msg_type;
  std::string msg_subtype;
  Bytes payload;
  std::string publisher;
  NameSet topic_publishers;
  NameSet topic_subscribers;
  friend bool operator==(const MessageEvent &, const MessageEvent &) = default;
};

enum class GraphChange
{
  kNodeAdded, kNodeRemoved, kTopicAdded, kTopicRemoved, kEndpointChanged, kServiceChanged,
};

std::string_view to_string(GraphChange c);
std::optional<GraphChange> graph_change_from_string(std::string_view s);

struct GraphEvent
{
  GraphChange change{GraphChange::kNodeAdded};
  GraphSnapshot snapshot;
  friend bool operator==(const GraphEvent &, const GraphEvent &) = default;
};

struct IdsAlert
{
  std::string alert_id;
  friend bool operator==(const IdsAlert &, const IdsAlert &) = default;
};

struct ControlSignal
{
  std::string sig;  // "USR1" or "USR2"
  friend bool operator==(const ControlSignal &, const ControlSignal &) = default;
};

struct ExternalEvent
{
  std::variant<IdsAlert, ControlSignal> kind;
  friend bool operator==(const ExternalEvent &, const ExternalEvent &) = default;
};

struct Event
{
  std::variant<MessageEvent, GraphEvent, ExternalEvent> kind;
  std::int64_t timestamp{0};  // engine ticks

  EventClass event_class() const;
  friend bool operator==(const Event &, const Event &) = default;
};

}  // namespace rips

#endif  // RIPS__EVENTS_HPP_
