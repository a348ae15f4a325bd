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

#include "rips/rule_ast.hpp"

#include <algorithm>

namespace rips
{

std::string_view to_string(EventClass c)
{
  switch (c) {
    case EventClass::kMessage: return "message";
    case EventClass::kGraph: return "graph";
    case EventClass::kExternal: return "external";
    case EventClass::kNeutral: return "neutral";
  }
  return "?";
}

ExprPtr Expr::make_and(ExprPtr l, ExprPtr r)
{
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kAnd;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

ExprPtr Expr::make_or(ExprPtr l, ExprPtr r)
{
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kOr;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

ExprPtr Expr::make_not(ExprPtr operand)
{
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kNot;
  e->lhs = std::move(operand);
  return e;
}

ExprPtr Expr::make_call(std::string fn, std::vector<Value> args, SourceLoc loc)
{
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kCall;
  e->function = std::move(fn);
  e->args = std::move(args);
  e->loc = loc;
  return e;
}

ExprPtr Expr::make_literal(bool b)
{
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kLiteral;
  e->literal = b;
  return e;
}

bool operator==(const Expr & a, const Expr & b)
{
  if (a.kind != b.kind) {
    return false;
  }
  switch (a.kind) {
    case Expr::Kind::kAnd:
    case Expr::Kind::kOr:
      return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
    case Expr::Kind::kNot:
      return equal(a.lhs, b.lhs);
    case Expr::Kind::kCall:
      return a.function == b.function && a.args == b.args;
    case Expr::Kind::kLiteral:
      return a.literal == b.literal;
  }
  return false;
}

bool equal(const ExprPtr & a, const ExprPtr & b)
{
  if (!a || !b) {
    return !a && !b;
  }
  return a == b || *a == *b;
}

ValueExprPtr ValueExpr::make_literal(Value v)
{
  auto e = std::make_shared<ValueExpr>();
  e->kind = Kind::kLiteral;
  e->literal = std::move(v);
  return e;
}

ValueExprPtr ValueExpr::make_variable(std::string name)
{
  auto e = std::make_shared<ValueExpr>();
  e->kind = Kind::kVariable;
  e->variable = std::move(name);
  return e;
}

ValueExprPtr ValueExpr::make_binary(char op, ValueExprPtr l, ValueExprPtr r)
{
  auto e = std::make_shared<ValueExpr>();
  e->kind = Kind::kBinary;
  e->op = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

ValueExprPtr ValueExpr::make_negate(ValueExprPtr operand)
{
  auto e = std::make_shared<ValueExpr>();
  e->kind = Kind::kNegate;
  e->lhs = std::move(operand);
  return e;
}

bool operator==(const ValueExpr & a, const ValueExpr & b)
{
  if (a.kind != b.kind) {
    return false;
  }
  switch (a.kind) {
    case ValueExpr::Kind::kLiteral: return a.literal == b.literal;
    case ValueExpr::Kind::kVariable: return a.variable == b.variable;
    case ValueExpr::Kind::kBinary:
      return a.op == b.op && equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
    case ValueExpr::Kind::kNegate: return equal(a.lhs, b.lhs);
  }
  return false;
}

bool equal(const ValueExprPtr & a, const ValueExprPtr & b)
{
  if (!a || !b) {
    return !a && !b;
  }
  return a == b || *a == *b;
}

const LevelDecl * RuleSet::find_level(std::string_view name) const
{
  auto it = std::find_if(levels.begin(), levels.end(), [&](const auto & l) {return l.name == name;});
  return it == levels.end() ? nullptr : &*it;
}

const Rule * RuleSet::find_rule(std::string_view name) const
{
  auto it = std::find_if(rules.begin(), rules.end(), [&](const auto & r) {return r.name == name;});
  return it == rules.end() ? nullptr : &*it;
}

}  // namespace rips
