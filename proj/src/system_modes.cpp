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

#include "rips/system_modes.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace rips
{

const ModeDefinition * ModesConfig::find_mode(std::string_view name) const
{
  for (const auto & m : modes) {
    if (m.name == name) {
      return &m;
    }
  }
  return nullptr;
}

std::set<std::string> ModesConfig::managed_parts() const
{
  std::set<std::string> out(parts.begin(), parts.end());
  for (const auto & m : modes) {
    for (const auto & [part, a] : m.parts) {
      out.insert(part);
    }
  }
  return out;
}

namespace
{

std::string where(const YAML::Node & n)
{
  auto m = n.Mark();
  if (m.is_null()) {
    return "";
  }
  return "line " + std::to_string(m.line + 1) + ": ";
}

Value scalar_value(const YAML::Node & n)
{
  const std::string & s = n.Scalar();
  if (n.Tag() == "!") {
    return Value{s};
  }
  std::int64_t i = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (ec == std::errc{} && p == s.data() + s.size() && !s.empty()) {
    return Value{i};
  }
  double d = 0;
  auto [q, ec2] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec2 == std::errc{} && q == s.data() + s.size() && !s.empty()) {
    return Value{d};
  }
  if (s == "true" || s == "True") {
    return Value{true};
  }
  if (s == "false" || s == "False") {
    return Value{false};
  }
  return Value{s};
}

Lifecycle parse_state(const YAML::Node & n, const std::string & part)
{
  if (!n.IsScalar()) {
    throw ModesError(where(n) + "state of '" + part + "' must be a word");
  }
  auto st = lifecycle_from_string(n.Scalar());
  if (!st) {
    throw ModesError(where(n) + "unknown state '" + n.Scalar() + "' for part '" + part + "'");
  }
  return *st;
}

PartAssignment parse_assignment(const YAML::Node & n, const std::string & part)
{
  PartAssignment a;
  if (n.IsScalar()) {
    a.state = parse_state(n, part);
    return a;
  }
  if (!n.IsMap() || !n["state"]) {
    throw ModesError(where(n) + "part '" + part + "' needs a state");
  }
  for (const auto & kv : n) {
    const std::string key = kv.first.as<std::string>();
    if (key != "state" && key != "parameters") {
      throw ModesError(where(kv.first) + "unexpected key '" + key + "' for part '" + part + "'");
    }
  }
  a.state = parse_state(n["state"], part);
  if (const YAML::Node params = n["parameters"]) {
    if (!params.IsMap()) {
      throw ModesError(where(params) + "parameters of '" + part + "' must be a map");
    }
    for (const auto & kv : params) {
      if (!kv.second.IsScalar()) {
        throw ModesError(where(kv.second) + "parameter values must be scalars");
      }
      a.parameters[kv.first.as<std::string>()] = scalar_value(kv.second);
    }
  }
  return a;
}

}  // namespace

ModesConfig parse_modes_config(std::string_view source)
{
  YAML::Node root;
  try {
    root = YAML::Load(std::string(source));
  } catch (const YAML::Exception & e) {
    throw ModesError(e.what());
  }
  if (!root.IsMap() || root.size() != 1) {
    throw ModesError("expected exactly one top-level system entry");
  }
  ModesConfig cfg;
  auto top = root.begin();
  cfg.system = top->first.as<std::string>();
  const YAML::Node body = top->second["ros__parameters"];
  if (!top->second.IsMap() || !body || !body.IsMap()) {
    throw ModesError("'" + cfg.system + "' needs a ros__parameters map");
  }
  if (const YAML::Node type = body["type"]) {
    if (type.Scalar() != "system") {
      throw ModesError(where(type) + "unsupported type '" + type.Scalar() + "'");
    }
  }
  if (const YAML::Node parts = body["parts"]) {
    if (parts.IsScalar()) {
      std::istringstream words(parts.Scalar());
      for (std::string w; words >> w; ) {
        cfg.parts.push_back(w);
      }
    } else if (parts.IsSequence()) {
      for (const auto & p : parts) {
        cfg.parts.push_back(p.as<std::string>());
      }
    } else if (!parts.IsNull()) {
      throw ModesError(where(parts) + "parts must be a list of names");
    }
  }
  std::set<std::string> seen;
  for (const auto & p : cfg.parts) {
    if (!seen.insert(p).second) {
      throw ModesError("part '" + p + "' listed twice");
    }
  }
  const YAML::Node modes = body["modes"];
  if (!modes || !modes.IsMap()) {
    throw ModesError("missing modes map");
  }
  for (const auto & kv : modes) {
    ModeDefinition m;
    m.name = kv.first.as<std::string>();
    if (cfg.find_mode(m.name)) {
      throw ModesError(where(kv.first) + "mode '" + m.name + "' defined twice");
    }
    if (kv.second.IsMap()) {
      for (const auto & pv : kv.second) {
        std::string part = pv.first.as<std::string>();
        m.parts[part] = parse_assignment(pv.second, part);
      }
    } else if (!kv.second.IsNull()) {
      throw ModesError(where(kv.second) + "mode '" + m.name + "' must map parts to states");
    }
    cfg.modes.push_back(std::move(m));
  }
  if (!cfg.find_mode(kDefaultMode)) {
    throw ModesError("missing __DEFAULT__ mode");
  }
  std::set<std::string> noted;
  for (const auto & m : cfg.modes) {
    for (const auto & [part, a] : m.parts) {
      if (!seen.count(part) && noted.insert(part).second) {
        cfg.warnings.push_back(
          "part '" + part + "' is used by mode '" + m.name + "' but not listed under parts");
      }
    }
  }
  return cfg;
}

void check_modes_parts(const ModesConfig & cfg, const std::set<std::string> & known)
{
  std::set<std::string> listed(cfg.parts.begin(), cfg.parts.end());
  for (const auto & m : cfg.modes) {
    for (const auto & [part, a] : m.parts) {
      if (!listed.count(part) && !known.count(part)) {
        throw ModesError(
          "part '" + part + "' referenced by mode '" + m.name + "' but undeclared");
      }
    }
  }
}

std::map<std::string, Lifecycle> observe_parts(const ModesConfig & cfg, const GraphSimulator & sim)
{
  std::map<std::string, Lifecycle> out;
  for (const auto & part : cfg.managed_parts()) {
    if (sim.has_node(part)) {
      out[part] = sim.lifecycle(part);
    }
  }
  return out;
}

std::string infer_mode(
  const ModesConfig & cfg, const std::map<std::string, Lifecycle> & observed,
  std::vector<std::string> * notes)
{
  std::vector<std::string> matches;
  for (const auto & m : cfg.modes) {
    bool ok = std::all_of(
      m.parts.begin(), m.parts.end(), [&](const auto & pa) {
        auto it = observed.find(pa.first);
        return it != observed.end() && it->second == pa.second.state;
      });
    if (ok) {
      matches.push_back(m.name);
    }
  }
  if (matches.size() == 1) {
    return matches.front();
  }
  if (matches.size() > 1 && notes) {
    std::string msg = "ambiguous mode inference:";
    for (const auto & m : matches) {
      msg += " " + m;
    }
    notes->push_back(msg);
  }
  return std::string(kUnknownMode);
}

ModeState apply_mode(const ModesConfig & cfg, const std::string & mode, GraphSimulator & sim)
{
  const ModeDefinition * def = cfg.find_mode(mode);
  if (!def) {
    throw ModesError("unknown mode '" + mode + "'");
  }
  ModeState st;
  st.requested_mode = mode;
  for (const auto & [part, a] : def->parts) {
    if (!sim.has_node(part)) {
      st.missing_parts.push_back(part);
      continue;
    }
    sim.set_lifecycle(part, a.state);
    for (const auto & [name, value] : a.parameters) {
      sim.set_parameter(part, name, value);
    }
  }
  st.part_states = observe_parts(cfg, sim);
  st.inferred_mode = st.missing_parts.empty() ?
    infer_mode(cfg, st.part_states) : std::string(kUnknownMode);
  return st;
}

}  // namespace rips
