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

#include <algorithm>
#include <map>
#include <regex>

#include "rips/rule_language.hpp"
#include "rips/subexpr_catalog.hpp"

namespace rips
{

std::string_view to_string(ValidationError::Kind k)
{
  using K = ValidationError::Kind;
  switch (k) {
    case K::kMixedEventClasses: return "MixedEventClasses";
    case K::kExternalCombination: return "ExternalCombination";
    case K::kUnknownFunction: return "UnknownFunction";
    case K::kArity: return "Arity";
    case K::kArgumentType: return "ArgumentType";
    case K::kUnknownLevel: return "UnknownLevel";
    case K::kInvalidRegex: return "InvalidRegex";
    case K::kInvalidOperator: return "InvalidOperator";
    case K::kSetOrdering: return "SetOrdering";
    case K::kInvalidArgument: return "InvalidArgument";
  }
  return "?";
}

namespace
{

template<typename F>
void for_each_call(const ExprPtr & expr, F && f)
{
  if (!expr) {
    return;
  }
  if (expr->kind == Expr::Kind::kCall) {
    f(*expr);
    return;
  }
  for_each_call(expr->lhs, f);
  for_each_call(expr->rhs, f);
}

bool arg_matches(const Value & v, ArgKind kind)
{
  switch (kind) {
    case ArgKind::kString: return type_of(v) == ValueType::kString;
    case ArgKind::kInteger: return type_of(v) == ValueType::kInteger;
    case ArgKind::kStringSet: {
        const auto * set = std::get_if<ValueSet>(&v);
        return set && (set->empty() ||
               type_of(set->elements().front()) == ValueType::kString);
      }
  }
  return false;
}

bool is_predefined(std::string_view name)
{
  return name == "Time" || name == "Level" || name == "Uptime";
}

// Variables that some set() action assigns a set literal to.
std::map<std::string, bool> set_typed_variables(const RuleSet & rs)
{
  std::map<std::string, bool> out;
  for (const auto & rule : rs.rules) {
    for (const auto & chain : rule.chains) {
      for (const auto & step : chain.steps) {
        if (const auto * set = std::get_if<SetAction>(&step.action)) {
          if (set->value && set->value->kind == ValueExpr::Kind::kLiteral &&
            type_of(set->value->literal) == ValueType::kSet)
          {
            out[set->variable] = true;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<EventClass> referenced_classes(const ExprPtr & expr)
{
  std::vector<EventClass> out;
  for_each_call(expr, [&](const Expr & call) {
      const auto * sig = find_subexpr(call.function);
      if (!sig || sig->event_class == EventClass::kNeutral) {
        return;
      }
      if (std::find(out.begin(), out.end(), sig->event_class) == out.end()) {
        out.push_back(sig->event_class);
      }
    });
  return out;
}

EventClass infer_class(const ExprPtr & expr)
{
  auto classes = referenced_classes(expr);
  return classes.empty() ? EventClass::kNeutral : classes.front();
}

std::vector<ValidationError> validate_ruleset(const RuleSet & rs)
{
  using K = ValidationError::Kind;
  std::vector<ValidationError> errors;
  const auto set_vars = set_typed_variables(rs);

  for (const auto & rule : rs.rules) {
    auto report = [&](K kind, std::string detail) {
        errors.push_back({kind, rule.name, std::move(detail)});
      };

    auto classes = referenced_classes(rule.expr);
    if (classes.size() > 1) {
      std::string detail = "expression combines";
      for (auto c : classes) {
        detail += " ";
        detail += to_string(c);
      }
      report(K::kMixedEventClasses, detail + " subexpressions");
    }

    int external_calls = 0;
    for_each_call(rule.expr, [&](const Expr & call) {
        const auto * sig = find_subexpr(call.function);
        if (!sig) {
          report(K::kUnknownFunction, "unknown subexpression '" + call.function + "'");
          return;
        }
        if (sig->event_class == EventClass::kExternal) {
          ++external_calls;
        }
        if (call.args.size() != sig->args.size()) {
          report(
            K::kArity, call.function + " takes " + std::to_string(sig->args.size()) +
            " arguments, got " + std::to_string(call.args.size()));
          return;
        }
        bool types_ok = true;
        for (std::size_t i = 0; i < call.args.size(); ++i) {
          if (!arg_matches(call.args[i], sig->args[i])) {
            types_ok = false;
            report(
              K::kArgumentType, call.function + " argument " + std::to_string(i + 1) +
              " must be " + std::string(to_string(sig->args[i])));
          }
        }
        if (!types_ok) {
          return;
        }

        const auto & fn = call.function;
        if (fn == "topicmatches") {
          try {
            std::regex re(std::get<std::string>(call.args[0]), std::regex::ECMAScript);
          } catch (const std::regex_error & e) {
            report(K::kInvalidRegex, "topicmatches: " + std::string(e.what()));
          }
        } else if (fn == "eval") {
          const auto & var = std::get<std::string>(call.args[0]);
          const auto & op = std::get<std::string>(call.args[1]);
          if (!is_eval_operator(op)) {
            report(K::kInvalidOperator, "eval operator '" + op + "' is not one of == != < > <= >=");
          } else if (is_ordering_operator(op) && set_vars.count(var)) {
            report(K::kSetOrdering, "ordering operator '" + op + "' on set variable '" + var + "'");
          }
        } else if (fn == "signal") {
          const auto & sig_name = std::get<std::string>(call.args[0]);
          if (sig_name != "USR1" && sig_name != "USR2") {
            report(K::kInvalidArgument, "signal must be \"USR1\" or \"USR2\"");
          }
        } else if (fn == "idsalert" || fn == "plugin" || fn == "payload") {
          if (std::get<std::string>(call.args[0]).empty()) {
            report(K::kInvalidArgument, fn + " argument must not be empty");
          }
        }
        // Interval checks: the last two arguments of every *count function.
        if (fn.size() > 5 && fn.compare(fn.size() - 5, 5, "count") == 0) {
          auto lo = std::get<std::int64_t>(call.args[call.args.size() - 2]);
          auto hi = std::get<std::int64_t>(call.args.back());
          if (lo > hi) {
            report(K::kInvalidArgument, fn + " interval is empty (min > max)");
          }
        }
      });
    if (external_calls > 1) {
      report(K::kExternalCombination, "external subexpressions may only combine with eval()");
    }

    for (const auto & chain : rule.chains) {
      for (const auto & step : chain.steps) {
        if (const auto * trig = std::get_if<TriggerAction>(&step.action)) {
          if (!rs.find_level(trig->level)) {
            report(K::kUnknownLevel, "trigger target '" + trig->level + "' is not a declared level");
          }
        } else if (const auto * set = std::get_if<SetAction>(&step.action)) {
          if (is_predefined(set->variable)) {
            report(K::kInvalidArgument, "predefined variable '" + set->variable + "' is read-only");
          }
        }
      }
    }
  }
  return errors;
}

}  // namespace rips
