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

#ifndef RIPS__SCENARIO_HPP_
#define RIPS__SCENARIO_HPP_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rips/alert_levels.hpp"
#include "rips/control.hpp"
#include "rips/event_log.hpp"
#include "rips/events.hpp"
#include "rips/evaluator.hpp"
#include "rips/grid_map.hpp"
#include "rips/rule_ast.hpp"
#include "rips/system_modes.hpp"

namespace rips
{

class ScenarioError : public std::runtime_error
{
public:
  ScenarioError(std::string message, int line = 0);
  int line() const {return line_;}

private:
  int line_;
};

/// One timeline entry: `at TICK VERB ARGS...`.
struct Directive
{
  std::int64_t tick{0};
  std::string verb;
  std::vector<std::string> args;
  int line{0};
};

struct PublisherSpec
{
  std::string node;
  std::string topic;
  std::string msg_type;
  std::string msg_subtype;
  double rate_hz{0.0};
  Bytes payload;
};

/// Scenario script (`.scn`). Setup lines build the initial graph:
///
///   tick_rate N                    ticks per simulated second (default 10)
///   duration N                     last tick (default: last timeline tick)
///   camera /topic                  topic whose rate is reported as camera_hz
///   keepout X Y W H                zone switched on while the keep-out parts run
///   keepout_parts NAME...          default: filter_mask_server costmap_filter_info_server
///   route X1 Y1 X2 Y2              path reported as the path_length metric
///   node NAME
///   publisher NODE TOPIC TYPE SUBTYPE RATE [PAYLOAD]
///   subscriber NODE TOPIC
///   service NODE NAME
///
/// Timeline lines run at the start of their tick, in file order:
///
///   at T add_node NAME | remove_node NAME
///   at T add_publisher NODE TOPIC TYPE SUBTYPE [RATE [PAYLOAD]]
///   at T add_subscriber NODE TOPIC | remove_endpoint NODE TOPIC
///   at T declare_service NODE NAME
///   at T publish NODE TOPIC PAYLOAD
///   at T lifecycle NODE active|inactive|reduced
///   at T ids_alert ID | signal USR1|USR2 | inject EVENT_JSON
///   at T admin_level LEVEL | mode MODE
///   at T expect_level LEVEL | expect_mode MODE
///   at T expect_metric NAME OP NUMBER
///
/// expect_* lines are checked after the tick's events are handled. Metric
/// names: camera_hz, free_cells, occupied_cells, keepout_cells,
/// path_length. PAYLOAD is `text:...`, `hex:...` or `fill:COUNT:BYTE`.
struct ScenarioScript
{
  std::int64_t tick_rate{10};
  std::optional<std::int64_t> duration;
  std::string camera_topic;
  std::optional<GridRect> keepout;
  std::vector<std::string> keepout_parts{"filter_mask_server", "costmap_filter_info_server"};
  std::optional<std::pair<GridPoint, GridPoint>> route;
  std::vector<std::string> nodes;
  std::vector<PublisherSpec> publishers;
  std::vector<std::pair<std::string, std::string>> subscribers;
  std::vector<std::pair<std::string, std::string>> services;
  std::vector<Directive> timeline;

  /// -1 for a script with neither a timeline nor a duration.
  std::int64_t last_tick() const;
};

ScenarioScript parse_scenario(std::string_view source);
ScenarioScript load_scenario(const std::filesystem::path & path);

/// Parses a PAYLOAD token as described above.
Bytes parse_payload_spec(std::string_view spec);

/// Daemon settings (JSON):
///   {"actions_dir": "...", "plugin_dir": "...",
///    "level_modes": {"DEFAULT": "__DEFAULT__", ...},
///    "plugin_timeout_ms": 500, "exec_timeout_ms": 5000, "procedure_timeout_ms": 5000}
/// Relative directories resolve against the config file's directory.
struct DaemonConfig
{
  std::filesystem::path actions_dir{"actions"};
  std::filesystem::path plugin_dir{"plugins"};
  std::map<std::string, std::string> level_modes{
    {"DEFAULT", "__DEFAULT__"}, {"ALERT", "ALERT"}, {"COMPROMISED", "COMPROMISED"},
    {"HALT", "HALT"}};
  std::chrono::milliseconds plugin_timeout{500};
  std::chrono::milliseconds exec_timeout{std::chrono::seconds(5)};
  std::chrono::milliseconds procedure_timeout{std::chrono::seconds(5)};
};

DaemonConfig parse_daemon_config(std::string_view json, const std::filesystem::path & base);
DaemonConfig load_daemon_config(const std::filesystem::path & path);

struct MetricsRecord
{
  std::int64_t tick{0};
  double camera_hz{0.0};
  std::size_t free_cells{0};
  std::size_t occupied_cells{0};  // occupied plus keep-out
  std::string level;
  std::string mode;
};

inline constexpr std::string_view kMetricsHeader =
  "tick,camera_hz,free_cells,occupied_cells,level,mode";

std::string format_metrics_row(const MetricsRecord & r);

struct ScenarioInputs
{
  RuleSet rules;
  /// Directory of the rule file; signatures and procedures resolve here.
  std::filesystem::path rules_dir{"."};
  ModesConfig modes;
  GridMap map;
  ScenarioScript script;
  DaemonConfig config;
  /// Additional events (trace or IDS feed), delivered at their timestamp.
  std::vector<Event> extra_events;
};

struct RunOptions
{
  std::ostream * metrics{nullptr};
  std::ostream * trace{nullptr};
  std::ostream * alerts{nullptr};
  std::ostream * transitions{nullptr};
  std::ostream * log{nullptr};
  ControlChannel * control{nullptr};
  /// Turn SIGUSR1/SIGUSR2 received by the process into signal events.
  bool user_signals{false};
  /// Extra environment for procedures and exec() programs.
  std::vector<std::pair<std::string, std::string>> env;
  /// Wall-clock pacing per tick; zero runs as fast as possible.
  std::chrono::milliseconds tick_period{0};
  /// Replaces the process-based plugin runner.
  std::shared_ptr<PluginRunner> plugins;
  const std::atomic<bool> * stop{nullptr};
};

struct ScenarioResult
{
  int exit_status{0};  // 0 when every expectation held
  std::string failure;
  std::vector<MetricsRecord> metrics;
  std::vector<TransitionRecord> transitions;
  /// Modes applied after level transitions and mode requests, in order.
  std::vector<std::string> applied_modes;
  std::vector<LogRecord> log;
};

ScenarioResult run_scenario(const ScenarioInputs & inputs, const RunOptions & options = {});

}  // namespace rips

#endif  // RIPS__SCENARIO_HPP_
