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

#ifndef RIPS__RULE_AST_HPP_
#define RIPS__RULE_AST_HPP_

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rips/value.hpp"

namespace rips
{

/// Event class a rule reacts to. Neutral rules (only eval() or literals)
/// are evaluated for every event.
enum class EventClass { kMessage, kGraph, kExternal, kNeutral };

std::string_view to_string(EventClass c);

struct SourceLoc
{
  int line{0};
  int column{0};
};

// ---------------------------------------------------------------------------
// Boolean expressions

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable boolean expression node. Children are shared, so copying an
/// expression is cheap and never aliases mutable state.
struct Expr
{
  enum class Kind { kAnd, kOr, kNot, kCall, kLiteral };

  Kind kind{Kind::kLiteral};
  ExprPtr lhs;                 // and/or left operand, not operand
  ExprPtr rhs;                 // and/or right operand
  std::string function;        // call
  std::vector<Value> args;     // call
  bool literal{false};         // literal
  SourceLoc loc;               // ignored by equality

  static ExprPtr make_and(ExprPtr l, ExprPtr r);
  static ExprPtr make_or(ExprPtr l, ExprPtr r);
  static ExprPtr make_not(ExprPtr e);
  static ExprPtr make_call(std::string fn, std::vector<Value> args, SourceLoc loc = {});
  static ExprPtr make_literal(bool b);
};

bool operator==(const Expr & a, const Expr & b);
bool equal(const ExprPtr & a, const ExprPtr & b);

// ---------------------------------------------------------------------------
// Arithmetic/string expressions used by set()

struct ValueExpr;
using ValueExprPtr = std::shared_ptr<const ValueExpr>;

struct ValueExpr
{
  enum class Kind { kLiteral, kVariable, kBinary, kNegate };

  Kind kind{Kind::kLiteral};
  Value literal;
  std::string variable;
  char op{0};  // one of + - * /
  ValueExprPtr lhs;
  ValueExprPtr rhs;

  static ValueExprPtr make_literal(Value v);
  static ValueExprPtr make_variable(std::string name);
  static ValueExprPtr make_binary(char op, ValueExprPtr l, ValueExprPtr r);
  static ValueExprPtr make_negate(ValueExprPtr e);
};

bool operator==(const ValueExpr & a, const ValueExpr & b);
bool equal(const ValueExprPtr & a, const ValueExprPtr & b);

// ---------------------------------------------------------------------------
// Actions and chains

struct AlertAction
{
  std::string message;
  friend bool operator==(const AlertAction &, const AlertAction &) = default;
};

struct SetAction
{
  std::string variable;
  ValueExprPtr value;
  friend bool operator==(const SetAction & a, const SetAction & b)
  {
    return a.variable == b.variable && equal(a.value, b.value);
  }
};

struct ExecAction
{
  std::string program;
  std::vector<std::string> args;
  friend bool operator==(const ExecAction &, const ExecAction &) = default;
};

struct TriggerAction
{
  std::string level;
  friend bool operator==(const TriggerAction &, const TriggerAction &) = default;
};

using Action = std::variant<AlertAction, SetAction, ExecAction, TriggerAction>;

/// Operator joining an action to the next one in its chain.
enum class ChainOp
{
  kThenIfOk,    // ->
  kThenIfFail,  // !->
  kSeq,         // ,
  kEnd,         // end
};

struct ChainStep
{
  Action action;
  ChainOp op{ChainOp::kEnd};
  friend bool operator==(const ChainStep &, const ChainStep &) = default;
};

/// Non-empty list of steps; only the last step carries kEnd.
struct ActionChain
{
  std::vector<ChainStep> steps;
  friend bool operator==(const ActionChain &, const ActionChain &) = default;
};

// ---------------------------------------------------------------------------
// Rules and levels

struct LevelDecl
{
  std::string name;
  bool soft{false};
  std::optional<std::string> enter_proc;
  std::optional<std::string> exit_proc;
  friend bool operator==(const LevelDecl &, const LevelDecl &) = default;
};

struct Rule
{
  std::string name;
  ExprPtr expr;
  std::vector<ActionChain> chains;
  EventClass inferred_class{EventClass::kNeutral};

  friend bool operator==(const Rule & a, const Rule & b)
  {
    return a.name == b.name && equal(a.expr, b.expr) && a.chains == b.chains &&
           a.inferred_class == b.inferred_class;
  }
};

struct RuleSet
{
  std::vector<LevelDecl> levels;
  std::vector<Rule> rules;
  std::set<std::string> signature_paths;

  const LevelDecl * find_level(std::string_view name) const;
  const Rule * find_rule(std::string_view name) const;

  friend bool operator==(const RuleSet &, const RuleSet &) = default;
};

}  // namespace rips

#endif  // RIPS__RULE_AST_HPP_
