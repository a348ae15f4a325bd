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

#ifndef RIPS__EVENT_CODEC_HPP_
#define RIPS__EVENT_CODEC_HPP_

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rips/events.hpp"

namespace rips
{

// JSON-lines event trace format, one object per line:
//
//   {"tick":12,"kind":"message","topic":"/cmd_vel","msg_type":"geometry_msgs",
//    "msg_subtype":"Twist","payload_hex":"0a0b","publisher":"rogue",
//    "topic_publishers":["rogue"],"topic_subscribers":[]}
//   {"tick":12,"kind":"graph","change":"NodeAdded",
//    "snapshot":{"version":3,"nodes":["a"],"topics":{"/t":{"publishers":["a"],
//    "subscribers":[],"msg_type":"std_msgs","msg_subtype":"Header"}},
//    "services":{"a":["get_state"]}}}
//   {"tick":25,"kind":"external","ids_alert":"port_scan"}
//   {"tick":30,"kind":"external","signal":"USR1"}

class CodecError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const GraphSnapshot & s);
GraphSnapshot snapshot_from_json(const nlohmann::json & j);

nlohmann::json to_json(const Event & ev);
Event event_from_json(const nlohmann::json & j);

std::string encode_event_line(const Event & ev);
Event decode_event_line(std::string_view line);

/// Reads a whole JSON-lines trace; blank lines and `#` comments skipped.
std::vector<Event> read_event_trace(std::istream & in);

/// IDS alert feed line `{"alert": "<id>"}` (optional "tick") to an
/// external event.
Event decode_ids_alert_line(std::string_view line);

std::string to_hex(const Bytes & bytes);
Bytes from_hex(std::string_view hex);

}  // namespace rips

#endif  // RIPS__EVENT_CODEC_HPP_
