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

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rips/control.hpp"
#include "rips/engine.hpp"
#include "rips/event_codec.hpp"
#include "rips/grid_map.hpp"
#include "rips/rule_language.hpp"
#include "rips/scenario.hpp"
#include "rips/system_modes.hpp"

namespace
{

std::atomic<bool> g_stop{false};

extern "C" void request_stop(int)
{
  g_stop.store(true);
}

std::string read_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::unique_ptr<std::ofstream> open_output(const std::string & path)
{
  if (path.empty()) {
    return nullptr;
  }
  auto out = std::make_unique<std::ofstream>(path);
  if (!*out) {
    throw std::runtime_error("cannot write " + path);
  }
  return out;
}

std::string default_socket()
{
  const char * env = std::getenv("RIPS_CONTROL_SOCKET");
  return env ? env : "/tmp/rips-control.sock";
}

rips::RuleSet load_rules(const std::string & path)
{
  try {
    return rips::parse_ruleset(read_file(path));
  } catch (const rips::ParseError & e) {
    throw std::runtime_error(path + ":" + e.what());
  }
}

struct RunArgs
{
  std::string rules;
  std::string modes;
  std::string map;
  std::string scenario;
  std::string config;
  std::string actions_dir;
  std::string plugin_dir;
  std::string trace;
  std::string metrics;
  std::string alerts;
  std::string transitions;
  std::string log;
  std::string control;
  std::string events;
  std::string ids_feed;
  int tick_ms{0};
  bool quiet{false};
};

int run(const RunArgs & a)
{
  rips::ScenarioInputs in;
  in.rules = load_rules(a.rules);
  in.rules_dir = std::filesystem::path(a.rules).parent_path();
  if (in.rules_dir.empty()) {
    in.rules_dir = ".";
  }
  in.modes = rips::parse_modes_config(read_file(a.modes));
  in.map = rips::load_map(a.map);
  in.script = rips::load_scenario(a.scenario);
  in.config = a.config.empty() ? rips::DaemonConfig{} : rips::load_daemon_config(a.config);
  if (!a.actions_dir.empty()) {
    in.config.actions_dir = a.actions_dir;
  }
  if (!a.plugin_dir.empty()) {
    in.config.plugin_dir = a.plugin_dir;
  }
  if (!a.events.empty()) {
    std::ifstream ev(a.events);
    if (!ev) {
      throw std::runtime_error("cannot open " + a.events);
    }
    auto trace = rips::read_event_trace(ev);
    in.extra_events.insert(in.extra_events.end(), trace.begin(), trace.end());
  }
  if (!a.ids_feed.empty()) {
    std::ifstream feed(a.ids_feed);
    if (!feed) {
      throw std::runtime_error("cannot open " + a.ids_feed);
    }
    for (std::string line; std::getline(feed, line); ) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        in.extra_events.push_back(rips::decode_ids_alert_line(line));
      }
    }
  }

  auto metrics = open_output(a.metrics);
  auto trace = open_output(a.trace);
  auto alerts = open_output(a.alerts);
  auto transitions = open_output(a.transitions);
  auto log = open_output(a.log);

  rips::RunOptions opt;
  opt.metrics = metrics.get();
  opt.trace = trace.get();
  opt.alerts = alerts.get();
  opt.transitions = transitions.get();
  opt.log = log.get();
  opt.tick_period = std::chrono::milliseconds(a.tick_ms);
  opt.user_signals = true;
  opt.stop = &g_stop;
  rips::install_user_signal_handlers();
  std::signal(SIGINT, request_stop);
  std::signal(SIGTERM, request_stop);

  rips::ControlChannel channel;
  std::unique_ptr<rips::ControlServer> server;
  if (!a.control.empty()) {
    server = std::make_unique<rips::ControlServer>(a.control, channel);
    opt.control = &channel;
    opt.env.emplace_back("RIPS_CONTROL_SOCKET", a.control);
  }

  rips::ScenarioResult result = rips::run_scenario(in, opt);
  if (!a.quiet) {
    for (const auto & t : result.transitions) {
      std::cout << "tick " << t.tick << ": " << t.from_level << " -> " << t.to_level << " (" <<
        rips::to_string(t.cause) << (t.rule.empty() ? "" : " " + t.rule) << ")\n";
    }
    for (const auto & r : result.log) {
      if (r.kind == rips::LogRecord::Kind::kAlert || r.kind == rips::LogRecord::Kind::kWarning) {
        std::cout << "tick " << r.tick << ": " << rips::to_string(r.kind) << " " <<
        (r.rule.empty() ? "" : "[" + r.rule + "] ") << r.message << "\n";
      }
    }
  }
  if (result.exit_status != 0) {
    std::cerr << "rips: expectation failed at " << result.failure << "\n";
  } else if (!a.quiet) {
    std::cout << "ok: " << result.metrics.size() << " ticks, all expectations met\n";
  }
  return result.exit_status;
}

int check(const std::string & rules_path, bool print)
{
  rips::RuleSet rs = load_rules(rules_path);
  auto errors = rips::validate_ruleset(rs);
  for (const auto & e : errors) {
    std::cerr << rules_path << ": " << (e.rule.empty() ? "" : "rule " + e.rule + ": ") <<
      rips::to_string(e.kind) << ": " << e.detail << "\n";
  }
  if (!errors.empty()) {
    return 1;
  }
  if (print) {
    std::cout << rips::pretty_print(rs);
  } else {
    std::cout << rules_path << ": " << rs.levels.size() << " levels, " << rs.rules.size() <<
      " rules\n";
  }
  return 0;
}

int ctl(const std::string & socket, const std::vector<std::string> & words)
{
  std::string line;
  for (const auto & w : words) {
    line += (line.empty() ? "" : " ") + w;
  }
  std::string reply = rips::control_request(socket, line);
  std::cout << reply << "\n";
  return reply.rfind("ok", 0) == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"rips: rule-based intrusion prevention for publish/subscribe robot graphs"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto * run_cmd = app.add_subcommand("run", "Run a scenario against a rule set");
  run_cmd->add_option("--rules", run_args.rules, "Rule file")->required()->check(
    CLI::ExistingFile);
  run_cmd->add_option("--modes", run_args.modes, "Modes file")->required()->check(
    CLI::ExistingFile);
  run_cmd->add_option("--map", run_args.map, "Grid map file")->required()->check(
    CLI::ExistingFile);
  run_cmd->add_option("--scenario", run_args.scenario, "Scenario script")->required()->check(
    CLI::ExistingFile);
  run_cmd->add_option("--config", run_args.config, "Daemon config (JSON)")->check(
    CLI::ExistingFile);
  run_cmd->add_option("--actions-dir", run_args.actions_dir, "Directory of exec() programs");
  run_cmd->add_option("--plugin-dir", run_args.plugin_dir, "Directory of plugin() programs");
  run_cmd->add_option("--trace", run_args.trace, "Write handled events as JSON lines");
  run_cmd->add_option("--metrics", run_args.metrics, "Write per-tick metrics CSV");
  run_cmd->add_option("--alerts", run_args.alerts, "Write alerts as JSON lines");
  run_cmd->add_option("--transitions", run_args.transitions, "Write level transitions as JSON lines");
  run_cmd->add_option("--log", run_args.log, "Write every engine record as JSON lines");
  run_cmd->add_option("--control", run_args.control, "Serve the control protocol on this socket");
  run_cmd->add_option("--events", run_args.events, "Extra events (JSON lines trace)")->check(
    CLI::ExistingFile);
  run_cmd->add_option("--ids-feed", run_args.ids_feed, "IDS alert feed (JSON lines)")->check(
    CLI::ExistingFile);
  run_cmd->add_option("--tick-ms", run_args.tick_ms, "Wall-clock milliseconds per tick")->check(
    CLI::NonNegativeNumber);
  run_cmd->add_flag("-q,--quiet", run_args.quiet, "Only report failures");

  std::string check_rules;
  bool check_print = false;
  auto * check_cmd = app.add_subcommand("check", "Parse and validate a rule file");
  check_cmd->add_option("--rules", check_rules, "Rule file")->required()->check(CLI::ExistingFile);
  check_cmd->add_flag("--print", check_print, "Print the canonical form");

  std::string socket = default_socket();
  std::vector<std::string> words;
  auto * ctl_cmd = app.add_subcommand("ctl", "Send a control request to a running daemon");
  ctl_cmd->add_option("--socket", socket, "Control socket");
  ctl_cmd->add_option("request", words, "level NAME | mode NAME | status | signal USR1|USR2")
  ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      return run(run_args);
    }
    if (*check_cmd) {
      return check(check_rules, check_print);
    }
    return ctl(socket, words);
  } catch (const std::exception & e) {
    std::cerr << "rips: " << e.what() << "\n";
    return 2;
  }
}
