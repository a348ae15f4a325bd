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

#include "rips/event_codec.hpp"

namespace rips
{

using nlohmann::json;

namespace
{

NameSet names_from(const json & j, const char * key)
{
  NameSet out;
  if (j.contains(key)) {
    for (const auto & n : j.at(key)) {
      out.insert(n.get<std::string>());
    }
  }
  return out;
}

int nibble(char c)
{
  if (c >= '0' && c <= '9') {
    return c - '0';
  }
  if (c >= 'a' && c <= 'f') {
    return c - 'a' + 10;
  }
  if (c >= 'A' && c <= 'F') {
    return c - 'A' + 10;
  }
  return -1;
}

}  // namespace

std::string to_hex(const Bytes & bytes)
{
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes from_hex(std::string_view hex)
{
  if (hex.size() % 2 != 0) {
    throw CodecError("hex payload has odd length");
  }
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw CodecError("invalid hex digit in payload");
    }
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

json to_json(const GraphSnapshot & s)
{
  json topics = json::object();
  for (const auto & [name, info] : s.topics) {
    topics[name] = {
      {"publishers", info.publishers},
      {"subscribers", info.subscribers},
      {"msg_type", info.msg_type},
      {"msg_subtype", info.msg_subtype},
    };
  }
  json services = json::object();
  for (const auto & [node, names] : s.services) {
    services[node] = names;
  }
  return {{"version", s.version}, {"nodes", s.nodes}, {"topics", topics}, {"services", services}};
}

GraphSnapshot snapshot_from_json(const json & j)
{
  GraphSnapshot s;
  s.version = j.value("version", std::uint64_t{0});
  s.nodes = names_from(j, "nodes");
  if (j.contains("topics")) {
    for (const auto & [name, t] : j.at("topics").items()) {
      TopicInfo info;
      info.publishers = names_from(t, "publishers");
      info.subscribers = names_from(t, "subscribers");
      info.msg_type = t.value("msg_type", "");
      info.msg_subtype = t.value("msg_subtype", "");
      s.topics.emplace(name, std::move(info));
    }
  }
  if (j.contains("services")) {
    for (const auto & [node, names] : j.at("services").items()) {
      NameSet set;
      for (const auto & n : names) {
        set.insert(n.get<std::string>());
      }
      s.services.emplace(node, std::move(set));
    }
  }
  return s;
}

json to_json(const Event & ev)
{
  json j = {{"tick", ev.timestamp}};
  std::visit(
    [&](const auto & k) {
      using T = std::decay_t<decltype(k)>;
      if constexpr (std::is_same_v<T, MessageEvent>) {
        j["kind"] = "message";
        j["topic"] = k.topic;
        j["msg_type"] = k.msg_type;
        j["msg_subtype"] = k.msg_subtype;
        j["payload_hex"] = to_hex(k.payload);
        j["publisher"] = k.publisher;
        j["topic_publishers"] = k.topic_publishers;
        j["topic_subscribers"] = k.topic_subscribers;
      } else if constexpr (std::is_same_v<T, GraphEvent>) {
        j["kind"] = "graph";
        j["change"] = std::string(to_string(k.change));
        j["snapshot"] = to_json(k.snapshot);
      } else {
        j["kind"] = "external";
        if (const auto * a = std::get_if<IdsAlert>(&k.kind)) {
          j["ids_alert"] = a->alert_id;
        } else {
          j["signal"] = std::get<ControlSignal>(k.kind).sig;
        }
      }
    }, ev.kind);
  return j;
}

Event event_from_json(const json & j)
{
  try {
    Event ev;
    ev.timestamp = j.value("tick", std::int64_t{0});
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "message") {
      MessageEvent m;
      m.topic = j.at("topic").get<std::string>();
      if (m.topic.empty() || m.topic.front() != '/') {
        throw CodecError("message topic must start with '/'");
      }
      m.msg_type = j.value("msg_type", "");
      m.msg_subtype = j.value("msg_subtype", "");
      m.payload = from_hex(j.value("payload_hex", ""));
      m.publisher = j.value("publisher", "");
      m.topic_publishers = names_from(j, "topic_publishers");
      m.topic_subscribers = names_from(j, "topic_subscribers");
      if (!m.publisher.empty()) {
        m.topic_publishers.insert(m.publisher);
      }
      ev.kind = std::move(m);
    } else if (kind == "graph") {
      GraphEvent g;
      auto change = graph_change_from_string(j.at("change").get<std::string>());
      if (!change) {
        throw CodecError("unknown graph change '" + j.at("change").get<std::string>() + "'");
      }
      g.change = *change;
      g.snapshot = snapshot_from_json(j.at("snapshot"));
      ev.kind = std::move(g);
    } else if (kind == "external") {
      ExternalEvent x;
      if (j.contains("ids_alert")) {
        auto id = j.at("ids_alert").get<std::string>();
        if (id.empty()) {
          throw CodecError("ids_alert id must not be empty");
        }
        x.kind = IdsAlert{std::move(id)};
      } else if (j.contains("signal")) {
        auto sig = j.at("signal").get<std::string>();
        if (sig != "USR1" && sig != "USR2") {
          throw CodecError("signal must be USR1 or USR2");
        }
        x.kind = ControlSignal{std::move(sig)};
      } else {
        throw CodecError("external event needs 'ids_alert' or 'signal'");
      }
      ev.kind = std::move(x);
    } else {
      throw CodecError("unknown event kind '" + kind + "'");
    }
    return ev;
  } catch (const json::exception & e) {
    throw CodecError(std::string("malformed event: ") + e.what());
  }
}

std::string encode_event_line(const Event & ev)
{
  return to_json(ev).dump();
}

Event decode_event_line(std::string_view line)
{
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) {
    throw CodecError("event line is not valid JSON");
  }
  return event_from_json(j);
}

std::vector<Event> read_event_trace(std::istream & in)
{
  std::vector<Event> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    try {
      out.push_back(decode_event_line(line));
    } catch (const CodecError & e) {
      throw CodecError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Event decode_ids_alert_line(std::string_view line)
{
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("alert") || !j.at("alert").is_string()) {
    throw CodecError("IDS feed line must be {\"alert\": \"<id>\"}");
  }
  auto id = j.at("alert").get<std::string>();
  if (id.empty()) {
    throw CodecError("IDS alert id must not be empty");
  }
  Event ev;
  ev.timestamp = j.value("tick", std::int64_t{0});
  ev.kind = ExternalEvent{IdsAlert{std::move(id)}};
  return ev;
}

}  // namespace rips
