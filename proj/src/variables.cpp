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

#include "rips/variables.hpp"

#include <charconv>
#include <compare>
#include <limits>

#include "rips/rule_language.hpp"
#include "rips/subexpr_catalog.hpp"

namespace rips
{

bool VariableStore::is_predefined(std::string_view name)
{
  return name == "Time" || name == "Level" || name == "Uptime";
}

std::optional<Value> VariableStore::get(std::string_view name) const
{
  if (name == "Time") {
    return Value{time_};
  }
  if (name == "Uptime") {
    return Value{uptime_};
  }
  if (name == "Level") {
    return Value{level_};
  }
  auto it = user_.find(name);
  if (it == user_.end()) {
    return std::nullopt;
  }
  return it->second;
}

VariableStore::SetStatus VariableStore::set_user(const std::string & name, Value v)
{
  if (is_predefined(name)) {
    return SetStatus::kPredefined;
  }
  auto it = user_.find(name);
  if (it != user_.end() && it->second.index() != v.index()) {
    return SetStatus::kTypeChange;
  }
  user_[name] = std::move(v);
  return SetStatus::kOk;
}

void VariableStore::set_clock(std::int64_t time, std::int64_t uptime)
{
  time_ = time;
  uptime_ = uptime;
}

namespace
{

template<typename T>
std::optional<T> parse_number(std::string_view text)
{
  T out{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || p != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return out;
}

bool apply_op(std::partial_ordering ord, std::string_view op)
{
  if (ord == std::partial_ordering::unordered) {
    return op == "!=";
  }
  if (op == "==") {return ord == 0;}
  if (op == "!=") {return ord != 0;}
  if (op == "<") {return ord < 0;}
  if (op == ">") {return ord > 0;}
  if (op == "<=") {return ord <= 0;}
  return ord >= 0;
}

double as_double(const Value & v)
{
  if (const auto * i = std::get_if<std::int64_t>(&v)) {
    return static_cast<double>(*i);
  }
  return std::get<double>(v);
}

bool is_number(const Value & v)
{
  return type_of(v) == ValueType::kInteger || type_of(v) == ValueType::kFloat;
}

}  // namespace

std::optional<Value> coerce_text(const Value & like, std::string_view text)
{
  switch (type_of(like)) {
    case ValueType::kInteger:
      if (auto i = parse_number<std::int64_t>(text)) {
        return Value{*i};
      }
      if (auto d = parse_number<double>(text)) {
        return Value{*d};
      }
      return std::nullopt;
    case ValueType::kFloat:
      if (auto d = parse_number<double>(text)) {
        return Value{*d};
      }
      return std::nullopt;
    case ValueType::kString:
      return Value{std::string(text)};
    case ValueType::kBoolean:
      if (text == "true") {
        return Value{true};
      }
      if (text == "false") {
        return Value{false};
      }
      return std::nullopt;
    case ValueType::kSet: {
        try {
          Value v = parse_literal(text);
          const auto * set = std::get_if<ValueSet>(&v);
          const auto & mine = std::get<ValueSet>(like);
          if (!set) {
            return std::nullopt;
          }
          if (!set->empty() && !mine.empty() &&
            set->elements().front().index() != mine.elements().front().index())
          {
            return std::nullopt;
          }
          return v;
        } catch (const ParseError &) {
          return std::nullopt;
        }
      }
  }
  return std::nullopt;
}

CompareStatus compare_variable(
  const VariableStore & vars, std::string_view var, std::string_view op, std::string_view text)
{
  if (!is_eval_operator(op)) {
    return CompareStatus::kBadOperator;
  }
  auto current = vars.get(var);
  if (!current) {
    return CompareStatus::kMissingVariable;
  }
  auto other = coerce_text(*current, text);
  if (!other) {
    return CompareStatus::kIncomparable;
  }
  auto result = [](bool b) {return b ? CompareStatus::kTrue : CompareStatus::kFalse;};

  if (type_of(*current) == ValueType::kSet) {
    if (is_ordering_operator(op)) {
      return CompareStatus::kIncomparable;
    }
    bool eq = std::get<ValueSet>(*current) == std::get<ValueSet>(*other);
    return result(op == "==" ? eq : !eq);
  }
  if (is_number(*current)) {
    if (type_of(*current) == ValueType::kInteger && type_of(*other) == ValueType::kInteger) {
      return result(apply_op(std::get<std::int64_t>(*current) <=> std::get<std::int64_t>(*other), op));
    }
    return result(apply_op(as_double(*current) <=> as_double(*other), op));
  }
  if (type_of(*current) == ValueType::kString) {
    return result(apply_op(std::get<std::string>(*current) <=> std::get<std::string>(*other), op));
  }
  return result(apply_op(std::get<bool>(*current) <=> std::get<bool>(*other), op));
}

std::optional<Value> evaluate_value(
  const ValueExprPtr & expr, const VariableStore & vars, std::string & error)
{
  using K = ValueExpr::Kind;
  switch (expr->kind) {
    case K::kLiteral:
      return expr->literal;
    case K::kVariable: {
        auto v = vars.get(expr->variable);
        if (!v) {
          error = "undefined variable '" + expr->variable + "'";
        }
        return v;
      }
    case K::kNegate: {
        auto v = evaluate_value(expr->lhs, vars, error);
        if (!v) {
          return std::nullopt;
        }
        if (const auto * i = std::get_if<std::int64_t>(&*v)) {
          if (*i == std::numeric_limits<std::int64_t>::min()) {
            error = "integer overflow";
            return std::nullopt;
          }
          return Value{-*i};
        }
        if (const auto * d = std::get_if<double>(&*v)) {
          return Value{-*d};
        }
        error = "cannot negate a " + std::string(type_name(type_of(*v)));
        return std::nullopt;
      }
    case K::kBinary:
      break;
  }

  auto lhs = evaluate_value(expr->lhs, vars, error);
  if (!lhs) {
    return std::nullopt;
  }
  auto rhs = evaluate_value(expr->rhs, vars, error);
  if (!rhs) {
    return std::nullopt;
  }
  const char op = expr->op;
  if (op == '+' && type_of(*lhs) == ValueType::kString && type_of(*rhs) == ValueType::kString) {
    return Value{std::get<std::string>(*lhs) + std::get<std::string>(*rhs)};
  }
  if (!is_number(*lhs) || !is_number(*rhs)) {
    error = std::string("operator '") + op + "' not defined for " +
      std::string(type_name(type_of(*lhs))) + " and " + std::string(type_name(type_of(*rhs)));
    return std::nullopt;
  }
  if (type_of(*lhs) == ValueType::kInteger && type_of(*rhs) == ValueType::kInteger) {
    std::int64_t a = std::get<std::int64_t>(*lhs);
    std::int64_t b = std::get<std::int64_t>(*rhs);
    std::int64_t r = 0;
    bool overflow = false;
    switch (op) {
      case '+': overflow = __builtin_add_overflow(a, b, &r); break;
      case '-': overflow = __builtin_sub_overflow(a, b, &r); break;
      case '*': overflow = __builtin_mul_overflow(a, b, &r); break;
      default:
        if (b == 0) {
          error = "division by zero";
          return std::nullopt;
        }
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
          overflow = true;
        } else {
          r = a / b;
        }
    }
    if (overflow) {
      error = "integer overflow";
      return std::nullopt;
    }
    return Value{r};
  }
  double a = as_double(*lhs);
  double b = as_double(*rhs);
  switch (op) {
    case '+': return Value{a + b};
    case '-': return Value{a - b};
    case '*': return Value{a * b};
    default:
      if (b == 0.0) {
        error = "division by zero";
        return std::nullopt;
      }
      return Value{a / b};
  }
}

}  // namespace rips
