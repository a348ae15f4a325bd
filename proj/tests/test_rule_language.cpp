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

#include <gtest/gtest.h>

#include <string>

#include "rips/rule_language.hpp"
#include "support/criteria.hpp"
#include "support/generators.hpp"
#include "support/test_support.hpp"

namespace
{

using rips::ChainOp;
using rips::EventClass;
using rips::ValidationError;

const char * kSample = R"(
level DEFAULT;
level soft ALERT enter="procedures/notify.sh";
level HALT;

rule R {
  when idsalert("intrusion")
  do alert("info: rule R activated") end;
     exec(usb_alarm) !-> alert("warning: usb_alarm failed") end;
     trigger(HALT) end
}
)";

TEST(RuleParser, ParsesLevelsAndChains)
{
  auto rs = rips::parse_ruleset(kSample);
  ASSERT_EQ(rs.levels.size(), 3u);
  EXPECT_TRUE(rs.levels[1].soft);
  EXPECT_EQ(rs.levels[1].enter_proc, "procedures/notify.sh");
  ASSERT_EQ(rs.rules.size(), 1u);
  const auto & r = rs.rules[0];
  EXPECT_EQ(r.inferred_class, EventClass::kExternal);
  ASSERT_EQ(r.chains.size(), 3u);
  ASSERT_EQ(r.chains[1].steps.size(), 2u);
  EXPECT_EQ(r.chains[1].steps[0].op, ChainOp::kThenIfFail);
  EXPECT_EQ(r.chains[1].steps[1].op, ChainOp::kEnd);
  EXPECT_EQ(std::get<rips::ExecAction>(r.chains[1].steps[0].action).program, "usb_alarm");
  EXPECT_TRUE(rips::validate_ruleset(rs).empty());
}

TEST(RuleParser, AndOrAreRightAssociative)
{
  auto e = rips::parse_expression("true and false and true or false");
  ASSERT_EQ(e->kind, rips::Expr::Kind::kOr);
  ASSERT_EQ(e->lhs->kind, rips::Expr::Kind::kAnd);
  EXPECT_EQ(e->lhs->lhs->kind, rips::Expr::Kind::kLiteral);
  EXPECT_EQ(e->lhs->rhs->kind, rips::Expr::Kind::kAnd);
}

TEST(RuleParser, CollectsSignaturePaths)
{
  auto rs = rips::parse_ruleset(
    "level A;\nrule m { when payload(\"sigs/a.yar\") or payload(\"b.yar\") do alert(\"x\") end }");
  EXPECT_EQ(rs.signature_paths, (std::set<std::string>{"sigs/a.yar", "b.yar"}));
  EXPECT_EQ(rs.rules[0].inferred_class, EventClass::kMessage);
}

TEST(RuleParser, ReportsLocation)
{
  try {
    rips::parse_ruleset("level A;\nrule r {\n  when true do alert(\"x\")\n}");
    FAIL() << "missing 'end' accepted";
  } catch (const rips::ParseError & e) {
    EXPECT_EQ(e.location().line, 4);
  }
}

TEST(RuleParser, RejectsMalformedInput)
{
  for (const char * bad : {
      "",                                                     // no level
      "rule r { when true do alert(\"x\") end }",             // no level
      "level A; rule r { when true do end }",                 // empty chain
      "level A; rule r { when true do alert(\"x\") -> end }",  // dangling operator
      "level A; rule r { when (true do alert(\"x\") end }",
      "level A; rule r { when true do alert(x) end }",
      "level A; rule r { when true do alert(\"unterminated) end }",
      "level A; rule r { when nodes({1, \"a\"}) do alert(\"x\") end }",
    })
  {
    EXPECT_THROW(rips::parse_ruleset(bad), rips::ParseError) << bad;
  }
}

std::vector<ValidationError::Kind> kinds(const std::string & src)
{
  std::vector<ValidationError::Kind> out;
  for (const auto & e : rips::validate_ruleset(rips::parse_ruleset(src))) {
    out.push_back(e.kind);
  }
  return out;
}

TEST(RuleValidator, FlagsEachProblem)
{
  using K = ValidationError::Kind;
  const std::string head = "level A;\nrule r { when ";
  const std::string tail = " do alert(\"x\") end }";
  EXPECT_EQ(kinds(head + "topicin({\"/a\"}) and nodecount(1, 2)" + tail),
    std::vector<K>{K::kMixedEventClasses});
  EXPECT_EQ(kinds(head + "idsalert(\"a\") or signal(\"USR1\")" + tail),
    std::vector<K>{K::kExternalCombination});
  EXPECT_EQ(kinds(head + "frobnicate(1)" + tail), std::vector<K>{K::kUnknownFunction});
  EXPECT_EQ(kinds(head + "nodecount(1)" + tail), std::vector<K>{K::kArity});
  EXPECT_EQ(kinds(head + "nodecount(\"1\", 2)" + tail), std::vector<K>{K::kArgumentType});
  EXPECT_EQ(kinds(head + "topicmatches(\"(\")" + tail), std::vector<K>{K::kInvalidRegex});
  EXPECT_EQ(kinds(head + "eval(\"x\", \"=~\", \"1\")" + tail), std::vector<K>{K::kInvalidOperator});
  EXPECT_EQ(kinds(head + "signal(\"HUP\")" + tail), std::vector<K>{K::kInvalidArgument});
  EXPECT_EQ(kinds(head + "nodecount(3, 1)" + tail), std::vector<K>{K::kInvalidArgument});
  EXPECT_EQ(kinds("level A;\nrule r { when true do trigger(B) end }"),
    std::vector<K>{K::kUnknownLevel});
  EXPECT_EQ(kinds("level A;\nrule r { when true do set(Level, 1) end }"),
    std::vector<K>{K::kInvalidArgument});
}

TEST(RuleValidator, ExternalWithEvalIsFine)
{
  EXPECT_TRUE(kinds("level A;\nrule r { when signal(\"USR2\") and eval(\"Time\", \">\", \"3\") "
    "do alert(\"x\") end }").empty());
}

TEST(RuleValidator, ShippedFilesAreClean)
{
  for (const auto & name : {"desk_patrol.rips", "rule_r.rips", "catalog.rips"}) {
    auto rs = rips::parse_ruleset(support::read_file(support::assets_dir() / "rules" / name));
    EXPECT_TRUE(rips::validate_ruleset(rs).empty()) << name;
  }
}

TEST(RulePrinter, PrintIsIdempotent)
{
  auto rs = rips::parse_ruleset(kSample);
  auto once = rips::pretty_print(rs);
  EXPECT_EQ(rips::pretty_print(rips::parse_ruleset(once)), once);
}

TEST(RulePrinter, KeepsNegativeLiteralsApart)
{
  auto rs = rips::parse_ruleset("level A;\nrule r { when true do set(x, -(-3) - -2.5) end }");
  EXPECT_EQ(rips::parse_ruleset(rips::pretty_print(rs)), rs);
}

TEST(RulePrinter, FixedPointOnGeneratedSets)
{
  auto v = criteria::parser_fixed_point(200, 4242);
  EXPECT_TRUE(v.pass) << v.detail;
  // A second seed widens coverage.
  auto w = criteria::parser_fixed_point(200, 99);
  EXPECT_TRUE(w.pass) << w.detail;
}

TEST(Infer, ClassFromFirstCall)
{
  EXPECT_EQ(rips::infer_class(rips::parse_expression("eval(\"a\", \"==\", \"1\")")),
    EventClass::kNeutral);
  EXPECT_EQ(rips::infer_class(rips::parse_expression("true or not nodecount(0, 1)")),
    EventClass::kGraph);
  auto refs = rips::referenced_classes(rips::parse_expression(
      "topicin({\"/a\"}) and nodecount(0, 1) and topicin({\"/b\"})"));
  EXPECT_EQ(refs, (std::vector<EventClass>{EventClass::kMessage, EventClass::kGraph}));
}

}  // namespace
