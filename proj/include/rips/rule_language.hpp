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

#ifndef RIPS__RULE_LANGUAGE_HPP_
#define RIPS__RULE_LANGUAGE_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rips/rule_ast.hpp"

namespace rips
{

/// Rule file grammar (`.rips`, UTF-8, `#` line comments):
///
///   file     := level_decl+ rule*
///   level    := "level" ["soft"] NAME ["enter" "=" STRING] ["exit" "=" STRING] ";"
///   rule     := "rule" NAME "{" "when" expr "do" chain (";" chain)* [";"] "}"
///   chain    := action (("->" | "!->" | ",") action)* "end"
///   action   := alert(STRING) | set(NAME, value) | exec(PROG {, ARG}) | trigger(NAME)
///   expr     := and ["or" expr]
///   and      := unary ["and" and]
///   unary    := "not" unary | "(" expr ")" | "true" | "false" | NAME "(" [lit {, lit}] ")"
///   value    := term {("+" | "-") term}
///   term     := factor {("*" | "/") factor}
///   factor   := "-" factor | "(" value ")" | literal | NAME
///
/// `and`/`or` associate to the right; operands are still evaluated left
/// first with short-circuit.
class ParseError : public std::runtime_error
{
public:
  ParseError(std::string message, SourceLoc loc, std::string expected = {});

  const SourceLoc & location() const {return loc_;}
  const std::string & expected() const {return expected_;}
  const std::string & reason() const {return reason_;}

private:
  std::string reason_;
  SourceLoc loc_;
  std::string expected_;
};

/// Parses a complete rule file. Each rule's inferred_class is filled in.
/// Throws ParseError.
RuleSet parse_ruleset(std::string_view source);

/// Parses a single boolean expression (no surrounding rule).
ExprPtr parse_expression(std::string_view source);

/// Parses a literal value (`42`, `1.5`, `"x"`, `true`, `{"a","b"}`).
Value parse_literal(std::string_view source);

/// Canonical text form. parse_ruleset(pretty_print(rs)) == rs.
std::string pretty_print(const RuleSet & rs);
std::string pretty_print(const ExprPtr & expr);
std::string pretty_print(const ValueExprPtr & expr);
std::string pretty_print(const Action & action);

struct ValidationError
{
  enum class Kind
  {
    kMixedEventClasses,
    kExternalCombination,
    kUnknownFunction,
    kArity,
    kArgumentType,
    kUnknownLevel,
    kInvalidRegex,
    kInvalidOperator,
    kSetOrdering,
    kInvalidArgument,
  };

  Kind kind;
  std::string rule;
  std::string detail;

  friend bool operator==(const ValidationError &, const ValidationError &) = default;
};

std::string_view to_string(ValidationError::Kind k);

/// Returns every problem found; an empty list means the set is executable.
std::vector<ValidationError> validate_ruleset(const RuleSet & rs);

/// Class implied by the subexpressions used. Mixed expressions report the
/// class of the first non-neutral call found (validation rejects them).
EventClass infer_class(const ExprPtr & expr);

/// Non-neutral classes referenced by the expression, in first-seen order.
std::vector<EventClass> referenced_classes(const ExprPtr & expr);

}  // namespace rips

#endif  // RIPS__RULE_LANGUAGE_HPP_
