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

#ifndef RIPS__GRAPH_SIMULATOR_HPP_
#define RIPS__GRAPH_SIMULATOR_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rips/events.hpp"
#include "rips/value.hpp"

namespace rips
{

enum class Lifecycle { kActive, kInactive, kReduced };

std::string_view to_string(Lifecycle l);
std::optional<Lifecycle> lifecycle_from_string(std::string_view s);

class SimulatorError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A periodic publication owned by a node.
struct PublishSchedule
{
  std::string topic;
  double rate_hz{0.0};
  Bytes payload;
};

struct SimNode
{
  std::string name;
  Lifecycle lifecycle{Lifecycle::kActive};
  std::map<std::string, Value> parameters;
  std::vector<PublishSchedule> schedules;
};

/// In-process publish/subscribe graph driven by a discrete tick clock.
/// Every mutation bumps the snapshot version and produces a GraphEvent;
/// publications produce MessageEvents. Events are also handed to the sink,
/// when one is set, in the order they are produced.
class GraphSimulator
{
public:
  using Sink = std::function<void (Event)>;

  explicit GraphSimulator(std::int64_t tick_rate = 10);

  void set_sink(Sink sink) {sink_ = std::move(sink);}
  /// Timestamp given to events produced outside step().
  void set_tick(std::int64_t tick) {tick_ = tick;}
  std::int64_t tick() const {return tick_;}
  std::int64_t tick_rate() const {return tick_rate_;}

  GraphEvent add_node(const std::string & name);
  /// Removes the node together with its endpoints and services.
  GraphEvent remove_node(const std::string & name);
  /// Registers `node` as a publisher. A positive rate schedules periodic
  /// publications of `payload`.
  GraphEvent add_publisher(
    const std::string & node, const std::string & topic, const std::string & msg_type,
    const std::string & msg_subtype, double rate_hz = 0.0, Bytes payload = {});
  GraphEvent add_subscriber(
    const std::string & node, const std::string & topic, const std::string & msg_type = {},
    const std::string & msg_subtype = {});
  /// Drops every endpoint of `node` on `topic`.
  GraphEvent remove_endpoint(const std::string & node, const std::string & topic);
  GraphEvent declare_service(const std::string & node, const std::string & service);
  /// Declared topics stay in the graph without endpoints.
  GraphEvent declare_topic(
    const std::string & topic, const std::string & msg_type, const std::string & msg_subtype);

  /// Returns nullopt when the node is not active or reduced.
  std::optional<MessageEvent> publish(
    const std::string & node, const std::string & topic, const Bytes & payload);

  /// Advances the clock to `tick` and runs scheduled publications. A node
  /// publishing at r Hz emits floor(k*r/R) - floor((k-1)*r/R) messages at
  /// tick k, R being the tick rate; reduced nodes use r/2.
  std::vector<MessageEvent> step(std::int64_t tick);

  void set_lifecycle(const std::string & node, Lifecycle state);
  Lifecycle lifecycle(const std::string & node) const;
  void set_parameter(const std::string & node, const std::string & name, Value value);
  std::optional<Value> parameter(const std::string & node, const std::string & name) const;

  bool has_node(const std::string & name) const;
  std::vector<std::string> node_names() const;
  const SimNode & node(const std::string & name) const;

  GraphSnapshot snapshot() const;

private:
  GraphEvent commit(GraphChange change);
  SimNode & node_ref(const std::string & name);
  const SimNode & node_ref(const std::string & name) const;
  void drop_dangling(const std::string & topic, bool & removed);
  MessageEvent make_message(const std::string & node, const std::string & topic, Bytes payload);
  void emit(Event ev);

  mutable std::mutex mutex_;
  std::int64_t tick_rate_;
  std::int64_t tick_{0};
  std::map<std::string, SimNode> nodes_;
  GraphSnapshot graph_;
  std::set<std::string> declared_topics_;
  Sink sink_;
};

}  // namespace rips

#endif  // RIPS__GRAPH_SIMULATOR_HPP_
