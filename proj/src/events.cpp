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

#include "rips/events.hpp"

#include <array>
#include <utility>

namespace rips
{

namespace
{

constexpr std::array<std::pair<GraphChange, std::string_view>, 6> kChangeNames = {{
  {GraphChange::kNodeAdded, "NodeAdded"},
  {GraphChange::kNodeRemoved, "NodeRemoved"},
  {GraphChange::kTopicAdded, "TopicAdded"},
  {GraphChange::kTopicRemoved, "TopicRemoved"},
  {GraphChange::kEndpointChanged, "EndpointChanged"},
  {GraphChange::kServiceChanged, "ServiceChanged"},
}};

}  // namespace

bool GraphSnapshot::consistent() const
{
  for (const auto & [name, info] : topics) {
    for (const auto & n : info.publishers) {
      if (!nodes.count(n)) {
        return false;
      }
    }
    for (const auto & n : info.subscribers) {
      if (!nodes.count(n)) {
        return false;
      }
    }
  }
  for (const auto & [owner, names] : services) {
    if (!nodes.count(owner)) {
      return false;
    }
  }
  return true;
}

std::string_view to_string(GraphChange c)
{
  for (const auto & [k, name] : kChangeNames) {
    if (k == c) {
      return name;
    }
  }
  return "?";
}

std::optional<GraphChange> graph_change_from_string(std::string_view s)
{
  for (const auto & [k, name] : kChangeNames) {
    if (name == s) {
      return k;
    }
  }
  return std::nullopt;
}

EventClass Event::event_class() const
{
  switch (kind.index()) {
    case 0: return EventClass::kMessage;
    case 1: return EventClass::kGraph;
    default: return EventClass::kExternal;
  }
}

}  // namespace rips
