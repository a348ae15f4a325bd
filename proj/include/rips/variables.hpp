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

#ifndef RIPS__VARIABLES_HPP_
#define RIPS__VARIABLES_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "rips/rule_ast.hpp"
#include "rips/value.hpp"

namespace rips
{

/// Predefined and user variables visible to rule expressions.
class VariableStore
{
public:
  static bool is_predefined(std::string_view name);

  std::optional<Value> get(std::string_view name) const;

  enum class SetStatus { kOk, kPredefined, kTypeChange };

  /// Creates or updates a user variable. Predefined names are refused, and
  /// an existing variable keeps its type.
  SetStatus set_user(const std::string & name, Value v);

  const std::map<std::string, Value, std::less<>> & user() const {return user_;}

  std::int64_t time() const {return time_;}
  std::int64_t uptime() const {return uptime_;}
  const std::string & level() const {return level_;}

  // Engine-only updates of the predefined variables.
  void set_clock(std::int64_t time, std::int64_t uptime);
  void set_level(std::string level) {level_ = std::move(level);}

  friend bool operator==(const VariableStore &, const VariableStore &) = default;

private:
  std::int64_t time_{0};
  std::int64_t uptime_{0};
  std::string level_;
  std::map<std::string, Value, std::less<>> user_;
};

/// Outcome of an eval()-style comparison.
enum class CompareStatus { kTrue, kFalse, kMissingVariable, kIncomparable, kBadOperator };

/// eval(var, op, text): `text` is coerced to the variable's type. Sets only
/// support == and !=.
CompareStatus compare_variable(
  const VariableStore & vars, std::string_view var, std::string_view op, std::string_view text);

/// Coerces textual `text` to the type of `like`.
std::optional<Value> coerce_text(const Value & like, std::string_view text);

/// Evaluates a set() value expression. Returns nullopt with `error` filled
/// on type mismatch, undefined variable, or division by zero.
std::optional<Value> evaluate_value(
  const ValueExprPtr & expr, const VariableStore & vars, std::string & error);

}  // namespace rips

#endif  // RIPS__VARIABLES_HPP_
