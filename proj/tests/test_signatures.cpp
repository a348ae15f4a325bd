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

#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "rips/signatures.hpp"
#include "support/criteria.hpp"
#include "support/generators.hpp"
#include "support/signature_oracle.hpp"
#include "support/test_support.hpp"

namespace
{

std::vector<std::uint8_t> bytes(const std::string & s)
{
  return {s.begin(), s.end()};
}

TEST(Signatures, TextHexAndRegex)
{
  auto set = rips::compile_signatures(R"(
// A comment.
rule shell_injection {
  meta:
    author = "ops"
  strings:
    $cmd = "rm -rf" nocase
    $elf = { 7F 45 4C 46 ?? 01 }
    $url = /https?:\/\/[a-z.]+/i
  condition:
    any of them
}
/* block
   comment */
rule both {
  strings:
    $a = "alpha"
    $b = "beta"
  condition:
    all of them
}
rule two {
  strings:
    $a = "x1"
    $b = "x2"
    $c = "x3"
  condition:
    2 of them
}
)");
  EXPECT_EQ(set.match(bytes("please RM -RF /")), std::set<std::string>{"shell_injection"});
  EXPECT_EQ(set.match(bytes("\x7f" "ELF\x02\x01")), std::set<std::string>{"shell_injection"});
  EXPECT_EQ(set.match(bytes("see HTTP://example.org")), std::set<std::string>{"shell_injection"});
  EXPECT_EQ(set.match(bytes("alpha then beta")), std::set<std::string>{"both"});
  EXPECT_TRUE(set.match(bytes("alpha only")).empty());
  EXPECT_EQ(set.match(bytes("x3 x1")), std::set<std::string>{"two"});
  EXPECT_TRUE(set.match(bytes("x3")).empty());
  EXPECT_FALSE(set.matches_any(bytes("")));
}

TEST(Signatures, ShippedCmdVelSignature)
{
  auto set = rips::compile_signatures(support::read_file(
      support::assets_dir() / "rules" / "signatures" / "cmd_vel_injection.yar"));
  EXPECT_TRUE(set.matches_any(bytes("rm -rf / --no-preserve-root")));
  std::vector<std::uint8_t> twist(48, 0);
  EXPECT_FALSE(set.matches_any(twist));
}

TEST(Signatures, UnsupportedFeatures)
{
  try {
    rips::compile_signatures("import \"pe\"\nrule a { condition: true }");
    FAIL();
  } catch (const rips::UnsupportedFeature & e) {
    EXPECT_NE(e.feature().find("import"), std::string::npos);
    EXPECT_EQ(e.line(), 1);
  }
  for (const char * src : {
      "include \"x.yar\"",
      "rule a : tag { strings: $a = \"x\" condition: any of them }",
      "private rule a { strings: $a = \"x\" condition: any of them }",
      "rule a { strings: $a = \"x\" wide condition: any of them }",
      "rule a { strings: $a = { 41 [2-4] 42 } condition: any of them }",
      "rule a { strings: $a = { 41 (42 | 43) } condition: any of them }",
      "rule a { strings: $a = { 4? } condition: any of them }",
      "rule a { strings: $a = \"x\" condition: $a and filesize < 10 }",
    })
  {
    EXPECT_THROW(rips::compile_signatures(src), rips::UnsupportedFeature) << src;
  }
}

TEST(Signatures, SyntaxErrors)
{
  for (const char * src : {
      "rule { }",
      "rule a { strings: $a = \"x\" }",
      "rule a { strings: $a = \"x\" condition: 5 of them }",
      "rule a { strings: $a = /(/ condition: any of them }",
      "rule a { strings: $a = { 4G } condition: any of them }",
    })
  {
    EXPECT_THROW(rips::compile_signatures(src), rips::SignatureError) << src;
  }
}

TEST(Signatures, AgreesWithBruteForce)
{
  auto v = criteria::signature_oracle(500, 9001);
  EXPECT_TRUE(v.pass) << v.detail;
}

// Appending bytes never removes a match.
TEST(Signatures, MonotoneUnderExtension)
{
  gen::Gen g(77);
  for (int i = 0; i < 300; ++i) {
    auto sigs = gen::random_signatures(g);
    auto set = rips::compile_signatures(sigs.source);
    auto payload = gen::random_payload(g);
    auto before = set.match(payload);
    // Regular expressions anchored at the end may stop matching, so only
    // signatures without such anchors are compared.
    auto extended = payload;
    auto tail = gen::random_payload(g, 8);
    extended.insert(extended.end(), tail.begin(), tail.end());
    auto after = set.match(extended);
    for (const auto & name : before) {
      bool anchored = false;
      for (const auto & s : sigs.signatures) {
        for (const auto & p : s.patterns) {
          anchored = anchored || (s.name == name && p.kind == rips::Pattern::Kind::kRegex &&
            p.text.find('$') != std::string::npos);
        }
      }
      if (!anchored) {
        EXPECT_TRUE(after.count(name)) << sigs.source;
      }
    }
  }
}

TEST(Signatures, ConcurrentMatching)
{
  auto set = rips::compile_signatures(
    "rule a { strings: $a = \"needle\" condition: any of them }");
  std::vector<std::thread> threads;
  std::atomic<int> hits{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
        for (int i = 0; i < 500; ++i) {
          hits += set.matches_any(bytes("hay needle hay")) ? 1 : 0;
        }
      });
  }
  for (auto & t : threads) {
    t.join();
  }
  EXPECT_EQ(hits.load(), 2000);
}

}  // namespace
