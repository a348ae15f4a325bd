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

#include <cctype>
#include <sstream>

#include "rips/rule_language.hpp"

namespace rips
{

namespace
{

bool is_identifier(std::string_view s)
{
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
      return false;
    }
  }
  return true;
}

void print_expr(std::ostream & os, const Expr & e);

void print_operand(std::ostream & os, const Expr & e, bool parens)
{
  if (parens) {
    os << '(';
    print_expr(os, e);
    os << ')';
  } else {
    print_expr(os, e);
  }
}

void print_expr(std::ostream & os, const Expr & e)
{
  using K = Expr::Kind;
  switch (e.kind) {
    case K::kOr:
      print_operand(os, *e.lhs, e.lhs->kind == K::kOr);
      os << " or ";
      print_operand(os, *e.rhs, false);
      break;
    case K::kAnd:
      print_operand(os, *e.lhs, e.lhs->kind == K::kOr || e.lhs->kind == K::kAnd);
      os << " and ";
      print_operand(os, *e.rhs, e.rhs->kind == K::kOr);
      break;
    case K::kNot:
      os << "not ";
      print_operand(os, *e.lhs, e.lhs->kind == K::kOr || e.lhs->kind == K::kAnd);
      break;
    case K::kCall:
      os << e.function << '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        os << (i ? ", " : "") << to_literal(e.args[i]);
      }
      os << ')';
      break;
    case K::kLiteral:
      os << (e.literal ? "true" : "false");
      break;
  }
}

bool is_additive(const ValueExpr & e)
{
  return e.kind == ValueExpr::Kind::kBinary && (e.op == '+' || e.op == '-');
}

void print_value(std::ostream & os, const ValueExpr & e);

void print_value_operand(std::ostream & os, const ValueExpr & e, bool parens)
{
  if (parens) {
    os << '(';
    print_value(os, e);
    os << ')';
  } else {
    print_value(os, e);
  }
}

void print_value(std::ostream & os, const ValueExpr & e)
{
  using K = ValueExpr::Kind;
  switch (e.kind) {
    case K::kLiteral:
      os << to_literal(e.literal);
      break;
    case K::kVariable:
      os << e.variable;
      break;
    case K::kBinary:
      if (e.op == '+' || e.op == '-') {
        print_value_operand(os, *e.lhs, false);
        os << ' ' << e.op << ' ';
        print_value_operand(os, *e.rhs, is_additive(*e.rhs));
      } else {
        print_value_operand(os, *e.lhs, is_additive(*e.lhs));
        os << ' ' << e.op << ' ';
        print_value_operand(os, *e.rhs, e.rhs->kind == K::kBinary);
      }
      break;
    case K::kNegate: {
        // A bare numeric literal after '-' would re-lex as a negative literal.
        bool numeric = e.lhs->kind == K::kLiteral &&
          (type_of(e.lhs->literal) == ValueType::kInteger ||
          type_of(e.lhs->literal) == ValueType::kFloat);
        os << '-';
        print_value_operand(os, *e.lhs, numeric || e.lhs->kind == K::kBinary);
        break;
      }
  }
}

void print_action(std::ostream & os, const Action & action)
{
  std::visit(
    [&](const auto & a) {
      using T = std::decay_t<decltype(a)>;
      if constexpr (std::is_same_v<T, AlertAction>) {
        os << "alert(" << quote_string(a.message) << ')';
      } else if constexpr (std::is_same_v<T, SetAction>) {
        os << "set(" << a.variable << ", ";
        print_value(os, *a.value);
        os << ')';
      } else if constexpr (std::is_same_v<T, ExecAction>) {
        os << "exec(" << (is_identifier(a.program) ? a.program : quote_string(a.program));
        for (const auto & arg : a.args) {
          os << ", " << quote_string(arg);
        }
        os << ')';
      } else {
        os << "trigger(" << a.level << ')';
      }
    }, action);
}

void print_chain(std::ostream & os, const ActionChain & chain)
{
  for (const auto & step : chain.steps) {
    print_action(os, step.action);
    switch (step.op) {
      case ChainOp::kThenIfOk: os << " -> "; break;
      case ChainOp::kThenIfFail: os << " !-> "; break;
      case ChainOp::kSeq: os << ", "; break;
      case ChainOp::kEnd: os << " end"; break;
    }
  }
}

}  // namespace

std::string pretty_print(const ExprPtr & expr)
{
  std::ostringstream os;
  print_expr(os, *expr);
  return os.str();
}

std::string pretty_print(const ValueExprPtr & expr)
{
  std::ostringstream os;
  print_value(os, *expr);
  return os.str();
}

std::string pretty_print(const Action & action)
{
  std::ostringstream os;
  print_action(os, action);
  return os.str();
}

std::string pretty_print(const RuleSet & rs)
{
  std::ostringstream os;
  for (const auto & level : rs.levels) {
    os << "level " << (level.soft ? "soft " : "") << level.name;
    if (level.enter_proc) {
      os << " enter=" << quote_string(*level.enter_proc);
    }
    if (level.exit_proc) {
      os << " exit=" << quote_string(*level.exit_proc);
    }
    os << ";\n";
  }
  for (const auto & rule : rs.rules) {
    os << "\nrule " << rule.name << " {\n  when ";
    print_expr(os, *rule.expr);
    os << "\n  do ";
    for (std::size_t i = 0; i < rule.chains.size(); ++i) {
      if (i) {
        os << ";\n     ";
      }
      print_chain(os, rule.chains[i]);
    }
    os << "\n}\n";
  }
  return os.str();
}

}  // namespace rips
