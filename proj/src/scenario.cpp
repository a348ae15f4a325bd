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

#include "rips/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "rips/engine.hpp"
#include "rips/event_codec.hpp"
#include "rips/graph_simulator.hpp"
#include "rips/subexpr_catalog.hpp"

namespace rips
{

ScenarioError::ScenarioError(std::string message, int line)
: std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
  line_(line)
{
}

std::int64_t ScenarioScript::last_tick() const
{
  if (duration) {
    return *duration;
  }
  return timeline.empty() ? -1 : timeline.back().tick;
}

namespace
{

std::string_view trim(std::string_view s)
{
  const char * ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) {
    return {};
  }
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

/// Splits into at most `max_tokens` whitespace-separated tokens; the last
/// token keeps the remainder of the line.
std::vector<std::string> split(std::string_view s, std::size_t max_tokens)
{
  std::vector<std::string> out;
  s = trim(s);
  while (!s.empty()) {
    if (out.size() + 1 == max_tokens) {
      out.emplace_back(s);
      break;
    }
    auto end = s.find_first_of(" \t");
    out.emplace_back(s.substr(0, end));
    s = end == std::string_view::npos ? std::string_view{} : trim(s.substr(end));
  }
  return out;
}

template<typename T>
T parse_number(const std::string & text, int line, const char * what)
{
  T out{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || p != text.data() + text.size() || text.empty()) {
    throw ScenarioError(std::string("bad ") + what + " '" + text + "'", line);
  }
  return out;
}

struct VerbShape
{
  std::string_view verb;
  std::size_t min_args;
  std::size_t max_args;  // the last argument takes the rest of the line
};

constexpr VerbShape kVerbs[] = {
  {"add_node", 1, 1},
  {"remove_node", 1, 1},
  {"add_publisher", 4, 6},
  {"add_subscriber", 2, 2},
  {"remove_endpoint", 2, 2},
  {"declare_service", 2, 2},
  {"publish", 3, 3},
  {"lifecycle", 2, 2},
  {"ids_alert", 1, 1},
  {"signal", 1, 1},
  {"inject", 1, 1},
  {"admin_level", 1, 1},
  {"mode", 1, 1},
  {"expect_level", 1, 1},
  {"expect_mode", 1, 1},
  {"expect_metric", 3, 3},
};

constexpr std::string_view kMetricNames[] = {
  "camera_hz", "free_cells", "occupied_cells", "keepout_cells", "path_length"};

void check_directive(const Directive & d)
{
  const auto & a = d.args;
  if (d.verb == "add_publisher") {
    if (a.size() > 4) {
      double r = parse_number<double>(a[4], d.line, "rate");
      if (r < 0 || !std::isfinite(r)) {
        throw ScenarioError("bad rate '" + a[4] + "'", d.line);
      }
    }
    if (a.size() > 5) {
      parse_payload_spec(a[5]);
    }
  } else if (d.verb == "publish") {
    parse_payload_spec(a[2]);
  } else if (d.verb == "lifecycle") {
    if (!lifecycle_from_string(a[1])) {
      throw ScenarioError("unknown lifecycle state '" + a[1] + "'", d.line);
    }
  } else if (d.verb == "signal") {
    if (a[0] != "USR1" && a[0] != "USR2") {
      throw ScenarioError("signal must be USR1 or USR2", d.line);
    }
  } else if (d.verb == "inject") {
    try {
      decode_event_line(a[0]);
    } catch (const std::exception & e) {
      throw ScenarioError(std::string("bad event: ") + e.what(), d.line);
    }
  } else if (d.verb == "expect_metric") {
    if (std::find(std::begin(kMetricNames), std::end(kMetricNames), a[0]) ==
      std::end(kMetricNames))
    {
      throw ScenarioError("unknown metric '" + a[0] + "'", d.line);
    }
    if (!is_eval_operator(a[1])) {
      throw ScenarioError("unknown comparison '" + a[1] + "'", d.line);
    }
    parse_number<double>(a[2], d.line, "number");
  }
}

}  // namespace

Bytes parse_payload_spec(std::string_view spec)
{
  if (spec.starts_with("text:")) {
    spec.remove_prefix(5);
    return Bytes(spec.begin(), spec.end());
  }
  if (spec.starts_with("hex:")) {
    try {
      return from_hex(spec.substr(4));
    } catch (const std::exception & e) {
      throw ScenarioError(std::string("bad hex payload: ") + e.what());
    }
  }
  if (spec.starts_with("fill:")) {
    std::string rest(spec.substr(5));
    auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw ScenarioError("fill payload needs COUNT:BYTE");
    }
    auto count = parse_number<std::size_t>(rest.substr(0, colon), 0, "fill count");
    auto byte = parse_number<unsigned>(rest.substr(colon + 1), 0, "fill byte");
    if (byte > 255 || count > (1u << 24)) {
      throw ScenarioError("fill payload out of range");
    }
    return Bytes(count, static_cast<std::uint8_t>(byte));
  }
  throw ScenarioError("payload must start with text:, hex: or fill:");
}

ScenarioScript parse_scenario(std::string_view source)
{
  ScenarioScript sc;
  std::istringstream in{std::string(source)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') {
      continue;
    }
    auto head = split(text, 2);
    const std::string & key = head[0];
    auto need = [&](std::size_t max, std::size_t min) {
        auto t = split(text, max + 1);
        if (t.size() - 1 < min) {
          throw ScenarioError("'" + key + "' needs at least " + std::to_string(min) +
            " arguments", line);
        }
        return std::vector<std::string>(t.begin() + 1, t.end());
      };
    if (key == "tick_rate") {
      auto a = need(1, 1);
      sc.tick_rate = parse_number<std::int64_t>(a[0], line, "tick rate");
      if (sc.tick_rate <= 0) {
        throw ScenarioError("tick rate must be positive", line);
      }
    } else if (key == "duration") {
      auto a = need(1, 1);
      sc.duration = parse_number<std::int64_t>(a[0], line, "duration");
      if (*sc.duration < 0) {
        throw ScenarioError("duration must not be negative", line);
      }
    } else if (key == "camera") {
      sc.camera_topic = need(1, 1)[0];
    } else if (key == "keepout") {
      auto a = need(4, 4);
      sc.keepout = GridRect{parse_number<int>(a[0], line, "x"), parse_number<int>(a[1], line, "y"),
        parse_number<int>(a[2], line, "width"), parse_number<int>(a[3], line, "height")};
    } else if (key == "keepout_parts") {
      auto t = split(text, std::string::npos);
      sc.keepout_parts.assign(t.begin() + 1, t.end());
    } else if (key == "route") {
      auto a = need(4, 4);
      sc.route = std::make_pair(
        GridPoint{parse_number<int>(a[0], line, "x"), parse_number<int>(a[1], line, "y")},
        GridPoint{parse_number<int>(a[2], line, "x"), parse_number<int>(a[3], line, "y")});
    } else if (key == "node") {
      sc.nodes.push_back(need(1, 1)[0]);
    } else if (key == "publisher") {
      auto a = need(6, 5);
      PublisherSpec p{a[0], a[1], a[2], a[3], parse_number<double>(a[4], line, "rate"), {}};
      if (a.size() > 5) {
        try {
          p.payload = parse_payload_spec(a[5]);
        } catch (const ScenarioError & e) {
          throw ScenarioError(e.what(), line);
        }
      }
      sc.publishers.push_back(std::move(p));
    } else if (key == "subscriber") {
      auto a = need(2, 2);
      sc.subscribers.emplace_back(a[0], a[1]);
    } else if (key == "service") {
      auto a = need(2, 2);
      sc.services.emplace_back(a[0], a[1]);
    } else if (key == "at") {
      auto t = split(text, 3);
      if (t.size() < 3) {
        throw ScenarioError("expected 'at TICK VERB ...'", line);
      }
      Directive d;
      d.line = line;
      d.tick = parse_number<std::int64_t>(t[1], line, "tick");
      if (d.tick < 0) {
        throw ScenarioError("negative tick", line);
      }
      if (!sc.timeline.empty() && d.tick < sc.timeline.back().tick) {
        throw ScenarioError("timeline ticks must not decrease", line);
      }
      auto verb_and_args = split(t[2], 2);
      d.verb = verb_and_args[0];
      const VerbShape * shape = nullptr;
      for (const auto & v : kVerbs) {
        if (v.verb == d.verb) {
          shape = &v;
        }
      }
      if (!shape) {
        throw ScenarioError("unknown directive '" + d.verb + "'", line);
      }
      if (verb_and_args.size() > 1) {
        d.args = split(verb_and_args[1], shape->max_args);
      }
      if (d.args.size() < shape->min_args) {
        throw ScenarioError("'" + d.verb + "' needs " + std::to_string(shape->min_args) +
          " arguments", line);
      }
      try {
        check_directive(d);
      } catch (const ScenarioError & e) {
        throw ScenarioError(e.line() ? std::string(e.what()).substr(
            std::string(e.what()).find(": ") + 2) : e.what(), line);
      }
      sc.timeline.push_back(std::move(d));
    } else {
      throw ScenarioError("unknown statement '" + key + "'", line);
    }
  }
  return sc;
}

ScenarioScript load_scenario(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open scenario " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

DaemonConfig parse_daemon_config(std::string_view json, const std::filesystem::path & base)
{
  DaemonConfig cfg;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception & e) {
    throw ScenarioError(std::string("daemon config: ") + e.what());
  }
  if (!j.is_object()) {
    throw ScenarioError("daemon config must be a JSON object");
  }
  auto dir = [&](const nlohmann::json & v) {
      std::filesystem::path p = v.get<std::string>();
      return p.is_relative() ? base / p : p;
    };
  auto ms = [](const nlohmann::json & v) {
      return std::chrono::milliseconds(v.get<std::int64_t>());
    };
  cfg.actions_dir = base / cfg.actions_dir;
  cfg.plugin_dir = base / cfg.plugin_dir;
  try {
    for (const auto & [key, v] : j.items()) {
      if (key == "actions_dir") {
        cfg.actions_dir = dir(v);
      } else if (key == "plugin_dir") {
        cfg.plugin_dir = dir(v);
      } else if (key == "level_modes") {
        cfg.level_modes = v.get<std::map<std::string, std::string>>();
      } else if (key == "plugin_timeout_ms") {
        cfg.plugin_timeout = ms(v);
      } else if (key == "exec_timeout_ms") {
        cfg.exec_timeout = ms(v);
      } else if (key == "procedure_timeout_ms") {
        cfg.procedure_timeout = ms(v);
      } else {
        throw ScenarioError("daemon config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception & e) {
    throw ScenarioError(std::string("daemon config: ") + e.what());
  }
  return cfg;
}

DaemonConfig load_daemon_config(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open daemon config " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_daemon_config(ss.str(), path.parent_path());
}

std::string format_metrics_row(const MetricsRecord & r)
{
  std::ostringstream os;
  os << r.tick << ',' << format_double(r.camera_hz) << ',' << r.free_cells << ',' <<
    r.occupied_cells << ',' << r.level << ',' << r.mode;
  return os.str();
}

namespace
{

struct WorkItem
{
  enum class Kind { kEvent, kAdmin, kMode };
  Kind kind{Kind::kEvent};
  Event event;
  std::string name;
};

bool compare(double lhs, std::string_view op, double rhs)
{
  if (op == "==") {return lhs == rhs;}
  if (op == "!=") {return lhs != rhs;}
  if (op == "<") {return lhs < rhs;}
  if (op == ">") {return lhs > rhs;}
  if (op == "<=") {return lhs <= rhs;}
  return lhs >= rhs;
}

/// Mutable state of one scenario run.
class Runner
{
public:
  Runner(const ScenarioInputs & in, const RunOptions & opt);
  ScenarioResult run();

private:
  void run_directive(const Directive & d, std::int64_t tick);
  bool check_expectation(const Directive & d, const MetricsRecord & m, std::string & why);
  void handle(WorkItem & item, std::int64_t tick);
  void apply(const std::string & mode, std::int64_t tick);
  void request_mode(const std::string & mode, std::int64_t tick);
  void sync_keepout();
  double path_length();
  MetricsRecord sample(std::int64_t tick);
  void drain_control(std::int64_t tick);
  void publish_status(std::int64_t tick);

  const ScenarioInputs & in_;
  const RunOptions & opt_;
  const ScenarioScript & sc_;
  GraphSimulator sim_;
  std::unique_ptr<Engine> engine_;
  GridMap map_;
  bool keepout_on_{false};
  std::optional<double> path_length_;
  std::deque<WorkItem> work_;
  std::deque<std::int64_t> camera_counts_;
  std::int64_t current_tick_{0};
  ScenarioResult result_;
};

Runner::Runner(const ScenarioInputs & in, const RunOptions & opt)
: in_(in), opt_(opt), sc_(in.script), sim_(in.script.tick_rate), map_(in.map)
{
  try {
    for (const auto & n : sc_.nodes) {
      sim_.add_node(n);
    }
    for (const auto & p : sc_.publishers) {
      sim_.add_publisher(p.node, p.topic, p.msg_type, p.msg_subtype, p.rate_hz, p.payload);
    }
    for (const auto & [node, topic] : sc_.subscribers) {
      sim_.add_subscriber(node, topic);
    }
    for (const auto & [node, service] : sc_.services) {
      sim_.declare_service(node, service);
    }
  } catch (const SimulatorError & e) {
    throw ScenarioError(std::string("scenario setup: ") + e.what());
  }

  EngineOptions eo;
  eo.base_dir = in.rules_dir;
  eo.actions_dir = in.config.actions_dir;
  eo.plugin_dir = in.config.plugin_dir;
  eo.plugin_timeout = in.config.plugin_timeout;
  eo.exec_timeout = in.config.exec_timeout;
  eo.procedure_timeout = in.config.procedure_timeout;
  eo.tick_rate = sc_.tick_rate;
  eo.env = opt.env;
  engine_ = std::make_unique<Engine>(in.rules, eo);
  if (opt.plugins) {
    engine_->set_plugin_runner(opt.plugins);
  }
  engine_->log().set_alert_stream(opt.alerts);
  engine_->log().set_record_stream(opt.log);
  engine_->levels().set_log_stream(opt.transitions);

  for (const auto & [level, mode] : in.config.level_modes) {
    if (!in.modes.find_mode(mode)) {
      throw ScenarioError("level '" + level + "' is bound to unknown mode '" + mode + "'");
    }
  }
  for (const auto & w : in.modes.warnings) {
    engine_->log().append_warning(0, "", "modes: " + w);
  }
  if (sc_.keepout) {
    const GridRect & z = *sc_.keepout;
    if (!map_.contains({z.x, z.y}) || !map_.contains({z.x + z.width - 1, z.y + z.height - 1})) {
      throw ScenarioError("keep-out zone leaves the map");
    }
  }

  engine_->levels().add_listener(
    [this](const TransitionRecord & rec) {
      auto it = in_.config.level_modes.find(rec.to_level);
      if (it != in_.config.level_modes.end()) {
        apply(it->second, rec.tick);
      }
    });
  auto start = in.config.level_modes.find(engine_->levels().current().name);
  if (start != in.config.level_modes.end()) {
    apply_mode(in.modes, start->second, sim_);
  }
  sync_keepout();

  sim_.set_sink(
    [this](Event ev) {
      if (const auto * m = std::get_if<MessageEvent>(&ev.kind)) {
        if (m->topic == sc_.camera_topic && !camera_counts_.empty()) {
          ++camera_counts_.back();
        }
      }
      work_.push_back(WorkItem{WorkItem::Kind::kEvent, std::move(ev), {}});
    });
}

void Runner::apply(const std::string & mode, std::int64_t tick)
{
  ModeState st = apply_mode(in_.modes, mode, sim_);
  result_.applied_modes.push_back(mode);
  for (const auto & part : st.missing_parts) {
    engine_->log().append_warning(tick, "", "mode " + mode + ": no part '" + part + "'");
  }
  sync_keepout();
}

void Runner::request_mode(const std::string & mode, std::int64_t tick)
{
  const std::string * level = nullptr;
  for (const auto & decl : engine_->levels().levels()) {
    auto it = in_.config.level_modes.find(decl.name);
    if (it != in_.config.level_modes.end() && it->second == mode) {
      level = &decl.name;
      break;
    }
  }
  if (!level) {
    apply(mode, tick);
    return;
  }
  TransitionResult r = engine_->levels().mode_feedback(*level, tick);
  if (r.status == TransitionStatus::kNoOp) {
    apply(mode, tick);
  } else if (!r.allowed()) {
    engine_->log().append_warning(
      tick, "", "mode " + mode + " refused: " + std::string(to_string(r.status)));
  }
}

void Runner::sync_keepout()
{
  if (!sc_.keepout) {
    return;
  }
  bool want = !sc_.keepout_parts.empty() && std::all_of(
    sc_.keepout_parts.begin(), sc_.keepout_parts.end(), [this](const std::string & p) {
      return sim_.has_node(p) && sim_.lifecycle(p) == Lifecycle::kActive;
    });
  if (want != keepout_on_) {
    toggle_keepout(map_, *sc_.keepout, want);
    keepout_on_ = want;
    path_length_.reset();
  }
}

double Runner::path_length()
{
  if (!path_length_) {
    auto path = sc_.route ? plan_path(map_, sc_.route->first, sc_.route->second) : std::nullopt;
    path_length_ = path ? static_cast<double>(path->size()) : -1.0;
  }
  return *path_length_;
}

void Runner::run_directive(const Directive & d, std::int64_t tick)
{
  const auto & a = d.args;
  auto push_event = [&](Event ev) {
      ev.timestamp = tick;
      work_.push_back(WorkItem{WorkItem::Kind::kEvent, std::move(ev), {}});
    };
  try {
    if (d.verb == "add_node") {
      sim_.add_node(a[0]);
    } else if (d.verb == "remove_node") {
      sim_.remove_node(a[0]);
    } else if (d.verb == "add_publisher") {
      double rate = a.size() > 4 ? std::stod(a[4]) : 0.0;
      Bytes payload = a.size() > 5 ? parse_payload_spec(a[5]) : Bytes{};
      sim_.add_publisher(a[0], a[1], a[2], a[3], rate, std::move(payload));
    } else if (d.verb == "add_subscriber") {
      sim_.add_subscriber(a[0], a[1]);
    } else if (d.verb == "remove_endpoint") {
      sim_.remove_endpoint(a[0], a[1]);
    } else if (d.verb == "declare_service") {
      sim_.declare_service(a[0], a[1]);
    } else if (d.verb == "publish") {
      sim_.publish(a[0], a[1], parse_payload_spec(a[2]));
    } else if (d.verb == "lifecycle") {
      sim_.set_lifecycle(a[0], *lifecycle_from_string(a[1]));
      sync_keepout();
    } else if (d.verb == "ids_alert") {
      push_event(Event{ExternalEvent{IdsAlert{a[0]}}, tick});
    } else if (d.verb == "signal") {
      push_event(Event{ExternalEvent{ControlSignal{a[0]}}, tick});
    } else if (d.verb == "inject") {
      push_event(decode_event_line(a[0]));
    } else if (d.verb == "admin_level") {
      work_.push_back(WorkItem{WorkItem::Kind::kAdmin, {}, a[0]});
    } else if (d.verb == "mode") {
      work_.push_back(WorkItem{WorkItem::Kind::kMode, {}, a[0]});
    }
  } catch (const SimulatorError & e) {
    throw ScenarioError(e.what(), d.line);
  }
}

void Runner::drain_control(std::int64_t tick)
{
  if (opt_.user_signals) {
    for (auto & sig : take_user_signals()) {
      work_.push_back(WorkItem{WorkItem::Kind::kEvent, Event{ExternalEvent{ControlSignal{sig}},
          tick}, {}});
    }
  }
  if (!opt_.control) {
    return;
  }
  for (auto & req : opt_.control->drain()) {
    if (req.verb == "level") {
      work_.push_back(WorkItem{WorkItem::Kind::kAdmin, {}, req.arg});
    } else if (req.verb == "mode") {
      work_.push_back(WorkItem{WorkItem::Kind::kMode, {}, req.arg});
    } else if (req.verb == "signal") {
      work_.push_back(WorkItem{WorkItem::Kind::kEvent, Event{ExternalEvent{ControlSignal{req.arg}},
          tick}, {}});
    } else if (req.verb == "event") {
      Event ev = decode_event_line(req.arg);
      ev.timestamp = tick;
      work_.push_back(WorkItem{WorkItem::Kind::kEvent, std::move(ev), {}});
    }
  }
}

void Runner::handle(WorkItem & item, std::int64_t tick)
{
  switch (item.kind) {
    case WorkItem::Kind::kEvent:
      if (opt_.trace) {
        *opt_.trace << encode_event_line(item.event) << '\n';
      }
      engine_->handle_event(item.event);
      break;
    case WorkItem::Kind::kAdmin: {
        TransitionResult r = engine_->admin_set_level(item.name, tick);
        if (!r.allowed()) {
          engine_->log().append_warning(
            tick, "", "admin level " + item.name + ": " + std::string(to_string(r.status)));
        }
        break;
      }
    case WorkItem::Kind::kMode:
      request_mode(item.name, tick);
      break;
  }
}

MetricsRecord Runner::sample(std::int64_t tick)
{
  MetricsRecord m;
  m.tick = tick;
  std::int64_t sum = 0;
  for (auto c : camera_counts_) {
    sum += c;
  }
  m.camera_hz = static_cast<double>(sum);
  m.free_cells = map_.free_cells();
  m.occupied_cells = map_.blocked_cells();
  m.level = engine_->levels().current().name;
  std::vector<std::string> notes;
  m.mode = infer_mode(in_.modes, observe_parts(in_.modes, sim_), &notes);
  return m;
}

bool Runner::check_expectation(const Directive & d, const MetricsRecord & m, std::string & why)
{
  const auto & a = d.args;
  if (d.verb == "expect_level") {
    why = "expected level " + a[0] + ", got " + m.level;
    return m.level == a[0];
  }
  if (d.verb == "expect_mode") {
    why = "expected mode " + a[0] + ", got " + m.mode;
    return m.mode == a[0];
  }
  double value = 0;
  if (a[0] == "camera_hz") {
    value = m.camera_hz;
  } else if (a[0] == "free_cells") {
    value = static_cast<double>(m.free_cells);
  } else if (a[0] == "occupied_cells") {
    value = static_cast<double>(m.occupied_cells);
  } else if (a[0] == "keepout_cells") {
    value = static_cast<double>(map_.count(Cell::kKeepout));
  } else {
    if (!sc_.route) {
      why = "path_length needs a route";
      return false;
    }
    value = path_length();
  }
  why = "expected " + a[0] + " " + a[1] + " " + a[2] + ", got " + format_double(value);
  return compare(value, a[1], std::stod(a[2]));
}

void Runner::publish_status(std::int64_t tick)
{
  if (opt_.control) {
    std::vector<std::string> notes;
    opt_.control->publish_status(
      "level=" + engine_->levels().current().name +
      " mode=" + infer_mode(in_.modes, observe_parts(in_.modes, sim_), &notes) +
      " tick=" + std::to_string(tick));
  }
}

ScenarioResult Runner::run()
{
  if (opt_.control) {
    std::set<std::string> levels;
    for (const auto & l : engine_->levels().levels()) {
      levels.insert(l.name);
    }
    std::set<std::string> modes;
    for (const auto & m : in_.modes.modes) {
      modes.insert(m.name);
    }
    opt_.control->set_known(std::move(levels), std::move(modes));
  }
  if (opt_.metrics) {
    *opt_.metrics << kMetricsHeader << '\n';
  }
  std::vector<Event> extra = in_.extra_events;
  std::stable_sort(extra.begin(), extra.end(), [](const Event & x, const Event & y) {
      return x.timestamp < y.timestamp;
    });
  std::size_t next_extra = 0;
  std::size_t next_directive = 0;
  std::int64_t last = sc_.last_tick();
  if (!sc_.duration && !extra.empty()) {
    last = std::max(last, extra.back().timestamp);
  }
  const auto & timeline = sc_.timeline;
  auto wake = std::chrono::steady_clock::now();

  for (std::int64_t t = 0; t <= last; ++t) {
    if (opt_.stop && opt_.stop->load()) {
      break;
    }
    current_tick_ = t;
    sim_.set_tick(t);
    camera_counts_.push_back(0);
    while (static_cast<std::int64_t>(camera_counts_.size()) > sc_.tick_rate) {
      camera_counts_.pop_front();
    }
    if (t > 0) {
      sim_.step(t);
    }
    while (next_extra < extra.size() && extra[next_extra].timestamp <= t) {
      Event ev = extra[next_extra++];
      ev.timestamp = t;
      work_.push_back(WorkItem{WorkItem::Kind::kEvent, std::move(ev), {}});
    }
    std::vector<const Directive *> expectations;
    while (next_directive < timeline.size() && timeline[next_directive].tick == t) {
      const Directive & d = timeline[next_directive++];
      if (d.verb.starts_with("expect_")) {
        expectations.push_back(&d);
      } else {
        run_directive(d, t);
      }
    }
    drain_control(t);
    while (!work_.empty()) {
      WorkItem item = std::move(work_.front());
      work_.pop_front();
      handle(item, t);
    }

    MetricsRecord m = sample(t);
    if (opt_.metrics) {
      *opt_.metrics << format_metrics_row(m) << '\n';
    }
    result_.metrics.push_back(m);
    publish_status(t);

    for (const Directive * d : expectations) {
      std::string why;
      if (!check_expectation(*d, m, why)) {
        result_.exit_status = 1;
        result_.failure = "line " + std::to_string(d->line) + " (tick " + std::to_string(t) +
          "): " + why;
        break;
      }
    }
    if (result_.exit_status != 0) {
      break;
    }
    if (opt_.tick_period.count() > 0) {
      wake += opt_.tick_period;
      std::this_thread::sleep_until(wake);
    }
  }
  if (opt_.metrics) {
    opt_.metrics->flush();
  }
  result_.transitions = engine_->levels().log();
  result_.log = engine_->log().records();
  return std::move(result_);
}

}  // namespace

ScenarioResult run_scenario(const ScenarioInputs & inputs, const RunOptions & options)
{
  Runner runner(inputs, options);
  return runner.run();
}

}  // namespace rips
