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

#ifndef RIPS__SIGNATURES_HPP_
#define RIPS__SIGNATURES_HPP_

#include <cstdint>
#include <memory>
#include <regex>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rips
{

// Signature files use a subset of the YARA rule syntax:
//
//   rule shell_injection {
//     meta:
//       author = "ops"              // accepted and ignored
//     strings:
//       $cmd = "rm -rf" nocase
//       $elf = { 7F 45 4C 46 ?? 01 }
//       $url = /https?:\/\/[a-z.]+/ i
//     condition:
//       any of them                 // or: all of them, 2 of them
//   }
//
// `//` and `/* */` comments are allowed. Imports, includes, rule tags and
// modifiers, string modifiers other than `nocase`, hex jumps/alternatives,
// nibble wildcards and boolean condition expressions are rejected with
// UnsupportedFeature.

class SignatureError : public std::runtime_error
{
public:
  SignatureError(const std::string & message, int line, int column);
  int line() const {return line_;}
  int column() const {return column_;}

private:
  int line_;
  int column_;
};

class UnsupportedFeature : public SignatureError
{
public:
  UnsupportedFeature(std::string feature, int line, int column);
  const std::string & feature() const {return feature_;}

private:
  std::string feature_;
};

struct HexToken
{
  std::uint8_t value{0};
  bool wildcard{false};
  friend bool operator==(const HexToken &, const HexToken &) = default;
};

struct Pattern
{
  enum class Kind { kText, kHex, kRegex };

  std::string name;  // including the leading '$'
  Kind kind{Kind::kText};
  std::string text;                // kText: literal bytes; kRegex: expression source
  bool case_sensitive{true};       // kText and kRegex
  std::vector<HexToken> hex;       // kHex
};

struct MatchCondition
{
  enum class Kind { kAny, kAll, kAtLeast };
  Kind kind{Kind::kAny};
  std::size_t k{1};  // kAtLeast only
};

struct Signature
{
  std::string name;
  std::vector<Pattern> patterns;
  MatchCondition condition;

  /// Number of distinct patterns that must hit.
  std::size_t required_hits() const;
};

/// Compiled, immutable signature collection. Matching is reentrant.
class SignatureSet
{
public:
  SignatureSet();
  ~SignatureSet();
  SignatureSet(SignatureSet &&) noexcept;
  SignatureSet & operator=(SignatureSet &&) noexcept;
  SignatureSet(const SignatureSet &) = delete;
  SignatureSet & operator=(const SignatureSet &) = delete;

  explicit SignatureSet(std::vector<Signature> signatures);

  const std::vector<Signature> & signatures() const {return signatures_;}

  /// Names of every signature whose condition holds over the payload.
  std::set<std::string> match(std::span<const std::uint8_t> payload) const;

  bool matches_any(std::span<const std::uint8_t> payload) const;

private:
  struct Automaton;

  /// Per-pattern hit flags, indexed like `flat_`.
  std::vector<bool> pattern_hits(std::span<const std::uint8_t> payload) const;

  std::vector<Signature> signatures_;
  std::vector<const Pattern *> flat_;
  std::vector<std::size_t> first_pattern_;  // index into flat_ per signature
  std::vector<std::regex> regexes_;         // parallel to flat_, only regex kinds used
  std::unique_ptr<Automaton> automaton_;
};

/// Throws SignatureError / UnsupportedFeature.
SignatureSet compile_signatures(std::string_view source);

std::set<std::string> match_payload(const SignatureSet & set, std::span<const std::uint8_t> payload);

}  // namespace rips

#endif  // RIPS__SIGNATURES_HPP_
