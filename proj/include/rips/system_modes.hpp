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

#ifndef RIPS__SYSTEM_MODES_HPP_
#define RIPS__SYSTEM_MODES_HPP_

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rips/graph_simulator.hpp"
#include "rips/value.hpp"

namespace rips
{

inline constexpr std::string_view kDefaultMode = "__DEFAULT__";
inline constexpr std::string_view kUnknownMode = "UNKNOWN";

class ModesError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct PartAssignment
{
  Lifecycle state{Lifecycle::kActive};
  std::map<std::string, Value> parameters;
  friend bool operator==(const PartAssignment &, const PartAssignment &) = default;
};

struct ModeDefinition
{
  std::string name;
  std::map<std::string, PartAssignment> parts;
  friend bool operator==(const ModeDefinition &, const ModeDefinition &) = default;
};

/// One system and its parts, with the state of each part in every mode.
struct ModesConfig
{
  std::string system;
  std::vector<std::string> parts;    // as listed under `parts:`
  std::vector<ModeDefinition> modes;  // in file order
  /// Parts used by a mode but not listed under `parts:`, and similar notes.
  std::vector<std::string> warnings;

  const ModeDefinition * find_mode(std::string_view name) const;
  /// Listed parts plus every part referenced by a mode.
  std::set<std::string> managed_parts() const;
};

/// Parses the modes file:
///
///   <system>:
///     ros__parameters:
///       type: system
///       parts: <whitespace separated part names>
///       modes:
///         <MODE>:
///           <part>: active | inactive | reduced
///           <part>: {state: <state>, parameters: {<name>: <value>, ...}}
///
/// Throws ModesError for malformed input, unknown state words, or a missing
/// __DEFAULT__ mode.
ModesConfig parse_modes_config(std::string_view source);

/// Throws ModesError naming the first part that is referenced by a mode but
/// neither listed under `parts:` nor in `known`.
void check_modes_parts(const ModesConfig & cfg, const std::set<std::string> & known);

struct ModeState
{
  std::string requested_mode;
  std::string inferred_mode;
  std::map<std::string, Lifecycle> part_states;
  /// Parts of the mode that the simulator does not have.
  std::vector<std::string> missing_parts;
};

/// Sets the lifecycle and parameters of every part assigned by `mode`.
/// Throws ModesError for an unknown mode.
ModeState apply_mode(const ModesConfig & cfg, const std::string & mode, GraphSimulator & sim);

/// Current states of the managed parts present in the simulator.
std::map<std::string, Lifecycle> observe_parts(const ModesConfig & cfg, const GraphSimulator & sim);

/// The single mode whose assignment matches `observed`, or UNKNOWN when
/// none or several match. Ambiguities are described in `notes`.
std::string infer_mode(
  const ModesConfig & cfg, const std::map<std::string, Lifecycle> & observed,
  std::vector<std::string> * notes = nullptr);

}  // namespace rips

#endif  // RIPS__SYSTEM_MODES_HPP_
