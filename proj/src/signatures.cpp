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

#include "rips/signatures.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <optional>
#include <set>

namespace rips
{

SignatureError::SignatureError(const std::string & message, int line, int column)
: std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
  line_(line), column_(column)
{
}

UnsupportedFeature::UnsupportedFeature(std::string feature, int line, int column)
: SignatureError("unsupported feature: " + feature, line, column), feature_(std::move(feature))
{
}

std::size_t Signature::required_hits() const
{
  switch (condition.kind) {
    case MatchCondition::Kind::kAny: return 1;
    case MatchCondition::Kind::kAll: return patterns.size();
    case MatchCondition::Kind::kAtLeast: return condition.k;
  }
  return 1;
}

namespace
{

std::uint8_t lower(std::uint8_t c)
{
  return (c >= 'A' && c <= 'Z') ? static_cast<std::uint8_t>(c - 'A' + 'a') : c;
}

// ---------------------------------------------------------------------------
// Parser

class SigParser
{
public:
  explicit SigParser(std::string_view src)
  : src_(src) {}

  std::vector<Signature> run()
  {
    std::vector<Signature> out;
    std::set<std::string> names;
    for (;;) {
      skip();
      if (eof()) {
        return out;
      }
      int line = line_;
      int col = col_;
      std::string word = identifier("'rule'");
      if (word == "import" || word == "include") {
        throw UnsupportedFeature(word, line, col);
      }
      if (word == "private" || word == "global") {
        throw UnsupportedFeature(word + " rule modifier", line, col);
      }
      if (word != "rule") {
        fail("unexpected '" + word + "'", "'rule'", line, col);
      }
      Signature sig = rule();
      if (!names.insert(sig.name).second) {
        fail("duplicate rule name '" + sig.name + "'", {}, line, col);
      }
      out.push_back(std::move(sig));
    }
  }

private:
  [[noreturn]] void fail(const std::string & msg, const std::string & expected = {})
  {
    fail(msg, expected, line_, col_);
  }

  [[noreturn]] static void fail(
    const std::string & msg, const std::string & expected, int line, int col)
  {
    throw SignatureError(msg + (expected.empty() ? "" : " (expected " + expected + ")"), line, col);
  }

  bool eof() const {return pos_ >= src_.size();}
  char cur() const {return eof() ? '\0' : src_[pos_];}
  char next() const {return pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';}

  void advance()
  {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip()
  {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(cur()))) {
        advance();
      } else if (cur() == '/' && next() == '/') {
        while (!eof() && cur() != '\n') {
          advance();
        }
      } else if (cur() == '/' && next() == '*') {
        advance();
        advance();
        while (!eof() && !(cur() == '*' && next() == '/')) {
          advance();
        }
        if (eof()) {
          fail("unterminated comment");
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  static bool ident_char(char c)
  {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string identifier(const std::string & expected)
  {
    skip();
    if (eof() || !(std::isalpha(static_cast<unsigned char>(cur())) || cur() == '_')) {
      fail(eof() ? "unexpected end of input" : std::string("unexpected '") + cur() + "'", expected);
    }
    std::string out;
    while (!eof() && ident_char(cur())) {
      out.push_back(cur());
      advance();
    }
    return out;
  }

  bool peek_word(std::string_view w)
  {
    skip();
    if (src_.substr(pos_, w.size()) != w) {
      return false;
    }
    std::size_t end = pos_ + w.size();
    return end >= src_.size() || !ident_char(src_[end]);
  }

  void expect(char c)
  {
    skip();
    if (cur() != c) {
      fail(eof() ? "unexpected end of input" : std::string("unexpected '") + cur() + "'",
        std::string("'") + c + "'");
    }
    advance();
  }

  void expect_word(std::string_view w)
  {
    int line = line_;
    int col = col_;
    std::string got = identifier("'" + std::string(w) + "'");
    if (got != w) {
      fail("unexpected '" + got + "'", "'" + std::string(w) + "'", line, col);
    }
  }

  Signature rule()
  {
    Signature sig;
    sig.name = identifier("rule name");
    skip();
    if (cur() == ':') {
      throw UnsupportedFeature("rule tags", line_, col_);
    }
    expect('{');
    if (peek_word("meta")) {
      expect_word("meta");
      expect(':');
      meta();
    }
    if (peek_word("strings")) {
      expect_word("strings");
      expect(':');
      strings(sig);
    }
    if (sig.patterns.empty()) {
      fail("rule '" + sig.name + "' defines no strings", "'strings:'");
    }
    expect_word("condition");
    expect(':');
    condition(sig);
    expect('}');
    return sig;
  }

  void meta()
  {
    while (!peek_word("strings") && !peek_word("condition")) {
      identifier("meta key");
      expect('=');
      skip();
      if (cur() == '"') {
        quoted();
      } else if (std::isdigit(static_cast<unsigned char>(cur())) || cur() == '-') {
        advance();
        while (!eof() && std::isdigit(static_cast<unsigned char>(cur()))) {
          advance();
        }
      } else {
        std::string v = identifier("meta value");
        if (v != "true" && v != "false") {
          fail("invalid meta value '" + v + "'");
        }
      }
    }
  }

  void strings(Signature & sig)
  {
    std::set<std::string> names;
    for (;;) {
      skip();
      if (cur() != '$') {
        return;
      }
      int line = line_;
      int col = col_;
      advance();
      Pattern p;
      p.name = "$";
      while (!eof() && ident_char(cur())) {
        p.name.push_back(cur());
        advance();
      }
      if (p.name == "$") {
        fail("anonymous strings are not supported", "string identifier", line, col);
      }
      if (!names.insert(p.name).second) {
        fail("duplicate string identifier '" + p.name + "'", {}, line, col);
      }
      expect('=');
      skip();
      int vline = line_;
      int vcol = col_;
      if (cur() == '"') {
        p.kind = Pattern::Kind::kText;
        p.text = quoted();
        if (p.text.empty()) {
          fail("empty text string '" + p.name + "'", {}, vline, vcol);
        }
      } else if (cur() == '{') {
        p.kind = Pattern::Kind::kHex;
        p.hex = hex_string();
      } else if (cur() == '/') {
        p.kind = Pattern::Kind::kRegex;
        p.text = regex_body();
        if (p.text.empty()) {
          fail("empty regular expression '" + p.name + "'", {}, vline, vcol);
        }
        while (!eof() && std::isalpha(static_cast<unsigned char>(cur()))) {
          if (cur() == 'i') {
            p.case_sensitive = false;
          } else {
            throw UnsupportedFeature(std::string("regex modifier '") + cur() + "'", line_, col_);
          }
          advance();
        }
      } else {
        fail("unexpected character", "string, hex string or regular expression");
      }
      modifiers(p);
      sig.patterns.push_back(std::move(p));
    }
  }

  void modifiers(Pattern & p)
  {
    for (;;) {
      skip();
      if (eof() || !std::isalpha(static_cast<unsigned char>(cur()))) {
        return;
      }
      if (peek_word("condition")) {
        return;
      }
      int line = line_;
      int col = col_;
      std::string mod = identifier("modifier");
      if (mod == "nocase" && p.kind != Pattern::Kind::kHex) {
        p.case_sensitive = false;
      } else {
        throw UnsupportedFeature("string modifier '" + mod + "'", line, col);
      }
    }
  }

  std::string quoted()
  {
    advance();  // opening quote
    std::string out;
    for (;;) {
      if (eof() || cur() == '\n') {
        fail("unterminated string", "'\"'");
      }
      char c = cur();
      advance();
      if (c == '"') {
        return out;
      }
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (eof()) {
        fail("unterminated string", "'\"'");
      }
      char e = cur();
      advance();
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'x': {
            int v = 0;
            for (int i = 0; i < 2; ++i) {
              if (eof() || !std::isxdigit(static_cast<unsigned char>(cur()))) {
                fail("malformed \\x escape", "two hex digits");
              }
              v = v * 16 + std::stoi(std::string(1, cur()), nullptr, 16);
              advance();
            }
            out.push_back(static_cast<char>(v));
            break;
          }
        default:
          fail(std::string("unknown escape '\\") + e + "'");
      }
    }
  }

  std::vector<HexToken> hex_string()
  {
    int line = line_;
    int col = col_;
    advance();  // '{'
    std::string nibbles;
    for (;;) {
      if (eof()) {
        fail("unterminated hex string", "'}'", line, col);
      }
      char c = cur();
      if (c == '}') {
        advance();
        break;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '[' || c == '-') {
        throw UnsupportedFeature("hex jump", line_, col_);
      }
      if (c == '(' || c == '|') {
        throw UnsupportedFeature("hex alternative", line_, col_);
      }
      if (c == '~') {
        throw UnsupportedFeature("hex not operator", line_, col_);
      }
      if (!std::isxdigit(static_cast<unsigned char>(c)) && c != '?') {
        fail(std::string("invalid character '") + c + "' in hex string");
      }
      nibbles.push_back(c);
      advance();
    }
    if (nibbles.empty()) {
      fail("empty hex string", {}, line, col);
    }
    if (nibbles.size() % 2 != 0) {
      fail("hex string has an odd number of nibbles", {}, line, col);
    }
    std::vector<HexToken> out;
    for (std::size_t i = 0; i < nibbles.size(); i += 2) {
      char hi = nibbles[i];
      char lo = nibbles[i + 1];
      if (hi == '?' && lo == '?') {
        out.push_back({0, true});
      } else if (hi == '?' || lo == '?') {
        throw UnsupportedFeature("nibble wildcard", line, col);
      } else {
        out.push_back({static_cast<std::uint8_t>(std::stoi(nibbles.substr(i, 2), nullptr, 16)), false});
      }
    }
    return out;
  }

  std::string regex_body()
  {
    advance();  // '/'
    std::string out;
    for (;;) {
      if (eof() || cur() == '\n') {
        fail("unterminated regular expression", "'/'");
      }
      char c = cur();
      advance();
      if (c == '/') {
        return out;
      }
      if (c == '\\' && cur() == '/') {
        out.push_back('/');
        advance();
        continue;
      }
      out.push_back(c);
      if (c == '\\' && !eof()) {
        out.push_back(cur());
        advance();
      }
    }
  }

  void condition(Signature & sig)
  {
    skip();
    int line = line_;
    int col = col_;
    if (std::isdigit(static_cast<unsigned char>(cur()))) {
      std::size_t k = 0;
      while (!eof() && std::isdigit(static_cast<unsigned char>(cur()))) {
        k = k * 10 + static_cast<std::size_t>(cur() - '0');
        advance();
      }
      sig.condition = {MatchCondition::Kind::kAtLeast, k};
    } else if (peek_word("any")) {
      identifier("");
      sig.condition = {MatchCondition::Kind::kAny, 1};
    } else if (peek_word("all")) {
      identifier("");
      sig.condition = {MatchCondition::Kind::kAll, sig.patterns.size()};
    } else {
      throw UnsupportedFeature("condition expression", line, col);
    }
    if (!peek_word("of")) {
      throw UnsupportedFeature("condition expression", line, col);
    }
    identifier("");
    skip();
    if (cur() == '(') {
      throw UnsupportedFeature("string set selection", line_, col_);
    }
    if (!peek_word("them")) {
      throw UnsupportedFeature("condition expression", line, col);
    }
    identifier("");
    skip();
    if (cur() != '}') {
      throw UnsupportedFeature("condition expression", line_, col_);
    }
    if (sig.condition.kind == MatchCondition::Kind::kAtLeast &&
      (sig.condition.k < 1 || sig.condition.k > sig.patterns.size()))
    {
      fail("condition count must be between 1 and the number of strings", {}, line, col);
    }
  }

  std::string_view src_;
  std::size_t pos_{0};
  int line_{1};
  int col_{1};
};

// ---------------------------------------------------------------------------
// Matching helpers

bool verify(const Pattern & p, std::span<const std::uint8_t> payload, std::size_t start)
{
  if (p.kind == Pattern::Kind::kText) {
    if (start + p.text.size() > payload.size()) {
      return false;
    }
    for (std::size_t i = 0; i < p.text.size(); ++i) {
      auto a = payload[start + i];
      auto b = static_cast<std::uint8_t>(p.text[i]);
      if (p.case_sensitive ? a != b : lower(a) != lower(b)) {
        return false;
      }
    }
    return true;
  }
  if (start + p.hex.size() > payload.size()) {
    return false;
  }
  for (std::size_t i = 0; i < p.hex.size(); ++i) {
    if (!p.hex[i].wildcard && p.hex[i].value != payload[start + i]) {
      return false;
    }
  }
  return true;
}

struct Anchor
{
  std::vector<std::uint8_t> bytes;  // lower-cased
  std::size_t offset{0};            // position of the anchor within the pattern
};

std::optional<Anchor> anchor_for(const Pattern & p)
{
  Anchor a;
  if (p.kind == Pattern::Kind::kText) {
    for (char c : p.text) {
      a.bytes.push_back(lower(static_cast<std::uint8_t>(c)));
    }
    return a;
  }
  // Longest wildcard-free run of a hex pattern.
  std::size_t best_start = 0;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < p.hex.size(); ) {
    if (p.hex[i].wildcard) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < p.hex.size() && !p.hex[j].wildcard) {
      ++j;
    }
    if (j - i > best_len) {
      best_start = i;
      best_len = j - i;
    }
    i = j;
  }
  if (best_len == 0) {
    return std::nullopt;
  }
  for (std::size_t i = best_start; i < best_start + best_len; ++i) {
    a.bytes.push_back(lower(p.hex[i].value));
  }
  a.offset = best_start;
  return a;
}

std::size_t pattern_length(const Pattern & p)
{
  return p.kind == Pattern::Kind::kHex ? p.hex.size() : p.text.size();
}

}  // namespace

// Aho-Corasick automaton over lower-cased anchors. Candidates found by the
// automaton are verified against the full pattern.
struct SignatureSet::Automaton
{
  struct AnchorRef
  {
    std::size_t pattern;  // index into flat_
    std::size_t length;
    std::size_t offset;
  };

  std::vector<std::array<std::int32_t, 256>> next;
  std::vector<std::vector<std::size_t>> out;  // anchor refs per state (with suffix outputs)
  std::vector<AnchorRef> anchors;
  std::vector<std::size_t> unanchored;  // all-wildcard hex patterns

  void add(std::size_t pattern, const Anchor & a)
  {
    if (next.empty()) {
      next.push_back({});
      next[0].fill(-1);
      out.emplace_back();
    }
    std::int32_t s = 0;
    for (auto b : a.bytes) {
      if (next[s][b] < 0) {
        next[s][b] = static_cast<std::int32_t>(next.size());
        next.push_back({});
        next.back().fill(-1);
        out.emplace_back();
      }
      s = next[s][b];
    }
    out[s].push_back(anchors.size());
    anchors.push_back({pattern, a.bytes.size(), a.offset});
  }

  void build()
  {
    if (next.empty()) {
      return;
    }
    std::vector<std::int32_t> fail(next.size(), 0);
    std::deque<std::int32_t> queue;
    for (int b = 0; b < 256; ++b) {
      if (next[0][b] < 0) {
        next[0][b] = 0;
      } else {
        fail[next[0][b]] = 0;
        queue.push_back(next[0][b]);
      }
    }
    while (!queue.empty()) {
      auto s = queue.front();
      queue.pop_front();
      const auto & inherited = out[fail[s]];
      out[s].insert(out[s].end(), inherited.begin(), inherited.end());
      for (int b = 0; b < 256; ++b) {
        auto t = next[s][b];
        if (t < 0) {
          next[s][b] = next[fail[s]][b];
        } else {
          fail[t] = next[fail[s]][b];
          queue.push_back(t);
        }
      }
    }
  }
};

SignatureSet::SignatureSet()
: automaton_(std::make_unique<Automaton>()) {}
SignatureSet::~SignatureSet() = default;
SignatureSet::SignatureSet(SignatureSet &&) noexcept = default;
SignatureSet & SignatureSet::operator=(SignatureSet &&) noexcept = default;

SignatureSet::SignatureSet(std::vector<Signature> signatures)
: signatures_(std::move(signatures)), automaton_(std::make_unique<Automaton>())
{
  for (const auto & sig : signatures_) {
    first_pattern_.push_back(flat_.size());
    for (const auto & p : sig.patterns) {
      std::size_t idx = flat_.size();
      flat_.push_back(&p);
      if (p.kind == Pattern::Kind::kRegex) {
        auto flags = std::regex::ECMAScript;
        if (!p.case_sensitive) {
          flags |= std::regex::icase;
        }
        try {
          regexes_.emplace_back(p.text, flags);
        } catch (const std::regex_error & e) {
          throw SignatureError("invalid regular expression " + p.name + ": " + e.what(), 0, 0);
        }
        continue;
      }
      regexes_.emplace_back();
      if (auto a = anchor_for(p)) {
        automaton_->add(idx, *a);
      } else {
        automaton_->unanchored.push_back(idx);
      }
    }
  }
  first_pattern_.push_back(flat_.size());
  automaton_->build();
}

std::vector<bool> SignatureSet::pattern_hits(std::span<const std::uint8_t> payload) const
{
  std::vector<bool> hit(flat_.size(), false);
  const auto & ac = *automaton_;
  if (!ac.next.empty()) {
    std::int32_t s = 0;
    for (std::size_t i = 0; i < payload.size(); ++i) {
      s = ac.next[s][lower(payload[i])];
      for (auto ref_idx : ac.out[s]) {
        const auto & ref = ac.anchors[ref_idx];
        if (hit[ref.pattern]) {
          continue;
        }
        std::size_t anchor_start = i + 1 - ref.length;
        if (anchor_start < ref.offset) {
          continue;
        }
        if (verify(*flat_[ref.pattern], payload, anchor_start - ref.offset)) {
          hit[ref.pattern] = true;
        }
      }
    }
  }
  for (auto idx : ac.unanchored) {
    hit[idx] = payload.size() >= pattern_length(*flat_[idx]);
  }
  for (std::size_t idx = 0; idx < flat_.size(); ++idx) {
    if (flat_[idx]->kind == Pattern::Kind::kRegex) {
      const char * first = reinterpret_cast<const char *>(payload.data());
      hit[idx] = std::regex_search(first, first + payload.size(), regexes_[idx]);
    }
  }
  return hit;
}

std::set<std::string> SignatureSet::match(std::span<const std::uint8_t> payload) const
{
  std::set<std::string> out;
  auto hit = pattern_hits(payload);
  for (std::size_t s = 0; s < signatures_.size(); ++s) {
    std::size_t count = 0;
    for (std::size_t i = first_pattern_[s]; i < first_pattern_[s + 1]; ++i) {
      count += hit[i] ? 1 : 0;
    }
    if (count >= signatures_[s].required_hits()) {
      out.insert(signatures_[s].name);
    }
  }
  return out;
}

bool SignatureSet::matches_any(std::span<const std::uint8_t> payload) const
{
  return !match(payload).empty();
}

SignatureSet compile_signatures(std::string_view source)
{
  return SignatureSet(SigParser(source).run());
}

std::set<std::string> match_payload(const SignatureSet & set, std::span<const std::uint8_t> payload)
{
  return set.match(payload);
}

}  // namespace rips
