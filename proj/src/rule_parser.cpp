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
#include <array>
#include <cctype>
#include <charconv>
#include <set>

#include "rips/rule_language.hpp"

namespace rips
{

ParseError::ParseError(std::string message, SourceLoc loc, std::string expected)
: std::runtime_error(
    std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message +
    (expected.empty() ? std::string{} : " (expected " + expected + ")")),
  reason_(std::move(message)), loc_(loc), expected_(std::move(expected))
{
}

namespace
{

enum class Tok
{
  kIdent, kString, kInt, kFloat,
  kLParen, kRParen, kLBrace, kRBrace, kComma, kSemi, kAssign,
  kArrow, kNotArrow, kPlus, kMinus, kStar, kSlash,
  kEof,
};

std::string_view describe(Tok t)
{
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kString: return "string";
    case Tok::kInt: return "integer";
    case Tok::kFloat: return "float";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kComma: return "','";
    case Tok::kSemi: return "';'";
    case Tok::kAssign: return "'='";
    case Tok::kArrow: return "'->'";
    case Tok::kNotArrow: return "'!->'";
    case Tok::kPlus: return "'+'";
    case Tok::kMinus: return "'-'";
    case Tok::kStar: return "'*'";
    case Tok::kSlash: return "'/'";
    case Tok::kEof: return "end of input";
  }
  return "?";
}

struct Token
{
  Tok kind{Tok::kEof};
  std::string text;  // identifier name or decoded string
  std::int64_t int_value{0};
  double float_value{0.0};
  SourceLoc loc;
};

constexpr std::array<std::string_view, 13> kReserved = {
  "level", "soft", "enter", "exit", "rule", "when", "do", "end",
  "and", "or", "not", "true", "false",
};

bool is_reserved(std::string_view word)
{
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

class Lexer
{
public:
  explicit Lexer(std::string_view src)
  : src_(src) {}

  std::vector<Token> run()
  {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.loc = {line_, col_};
      if (pos_ >= src_.size()) {
        t.kind = Tok::kEof;
        out.push_back(std::move(t));
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
          (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        {
          advance();
        }
        t.kind = Tok::kIdent;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number(t);
      } else if (c == '"') {
        lex_string(t);
      } else {
        lex_punct(t);
      }
      out.push_back(std::move(t));
    }
  }

private:
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

  void skip_space()
  {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          advance();
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void lex_number(Token & t)
  {
    std::size_t start = pos_;
    bool is_float = false;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      advance();
    }
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
      std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))
    {
      is_float = true;
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      }
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
        ++look;
      }
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        is_float = true;
        while (pos_ < look) {
          advance();
        }
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          advance();
        }
      } else {
        pos_ = save;
      }
    }
    if (pos_ < src_.size() &&
      (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
    {
      throw ParseError("malformed number", t.loc);
    }
    std::string_view text = src_.substr(start, pos_ - start);
    const char * first = text.data();
    const char * last = text.data() + text.size();
    if (is_float) {
      t.kind = Tok::kFloat;
      auto [p, ec] = std::from_chars(first, last, t.float_value);
      if (ec != std::errc{} || p != last) {
        throw ParseError("malformed float literal", t.loc);
      }
    } else {
      t.kind = Tok::kInt;
      auto [p, ec] = std::from_chars(first, last, t.int_value);
      if (ec != std::errc{} || p != last) {
        throw ParseError("integer literal out of range", t.loc);
      }
    }
  }

  void lex_string(Token & t)
  {
    t.kind = Tok::kString;
    advance();  // opening quote
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw ParseError("unterminated string literal", t.loc, "'\"'");
      }
      char c = src_[pos_];
      if (c == '"') {
        advance();
        return;
      }
      if (c == '\\') {
        SourceLoc esc_loc{line_, col_};
        advance();
        if (pos_ >= src_.size()) {
          throw ParseError("unterminated string literal", t.loc, "'\"'");
        }
        switch (src_[pos_]) {
          case 'n': t.text.push_back('\n'); break;
          case 't': t.text.push_back('\t'); break;
          case 'r': t.text.push_back('\r'); break;
          case '"': t.text.push_back('"'); break;
          case '\\': t.text.push_back('\\'); break;
          default:
            throw ParseError("unknown escape sequence", esc_loc);
        }
        advance();
        continue;
      }
      t.text.push_back(c);
      advance();
    }
  }

  void lex_punct(Token & t)
  {
    char c = src_[pos_];
    auto next_is = [&](std::string_view s) {return src_.substr(pos_, s.size()) == s;};
    std::size_t width = 1;
    switch (c) {
      case '(': t.kind = Tok::kLParen; break;
      case ')': t.kind = Tok::kRParen; break;
      case '{': t.kind = Tok::kLBrace; break;
      case '}': t.kind = Tok::kRBrace; break;
      case ',': t.kind = Tok::kComma; break;
      case ';': t.kind = Tok::kSemi; break;
      case '=': t.kind = Tok::kAssign; break;
      case '+': t.kind = Tok::kPlus; break;
      case '*': t.kind = Tok::kStar; break;
      case '/': t.kind = Tok::kSlash; break;
      case '-':
        if (next_is("->")) {
          t.kind = Tok::kArrow;
          width = 2;
        } else {
          t.kind = Tok::kMinus;
        }
        break;
      case '!':
        if (next_is("!->")) {
          t.kind = Tok::kNotArrow;
          width = 3;
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.loc);
    }
    for (std::size_t i = 0; i < width; ++i) {
      advance();
    }
  }

  std::string_view src_;
  std::size_t pos_{0};
  int line_{1};
  int col_{1};
};

class Parser
{
public:
  explicit Parser(std::string_view src)
  : toks_(Lexer(src).run()) {}

  RuleSet parse_file()
  {
    RuleSet rs;
    std::set<std::string> level_names;
    std::set<std::string> rule_names;
    while (!at(Tok::kEof)) {
      const Token & t = peek();
      if (is_word("level")) {
        SourceLoc loc = t.loc;
        LevelDecl decl = parse_level();
        if (!level_names.insert(decl.name).second) {
          throw ParseError("duplicate level name '" + decl.name + "'", loc);
        }
        rs.levels.push_back(std::move(decl));
      } else if (is_word("rule")) {
        SourceLoc loc = t.loc;
        Rule rule = parse_rule();
        if (!rule_names.insert(rule.name).second) {
          throw ParseError("duplicate rule name '" + rule.name + "'", loc);
        }
        rs.rules.push_back(std::move(rule));
      } else {
        throw ParseError("unexpected " + token_text(t), t.loc, "'level' or 'rule'");
      }
    }
    if (rs.levels.empty()) {
      throw ParseError("at least one level required", peek().loc);
    }
    return rs;
  }

  ExprPtr parse_standalone_expression()
  {
    ExprPtr e = parse_or();
    expect(Tok::kEof);
    return e;
  }

  Value parse_standalone_literal()
  {
    Value v = parse_literal_value();
    expect(Tok::kEof);
    return v;
  }

private:
  const Token & peek(std::size_t ahead = 0) const
  {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  bool at(Tok k) const {return peek().kind == k;}

  bool is_word(std::string_view w, std::size_t ahead = 0) const
  {
    const Token & t = peek(ahead);
    return t.kind == Tok::kIdent && t.text == w;
  }

  Token take()
  {
    Token t = peek();
    if (pos_ < toks_.size() - 1) {
      ++pos_;
    }
    return t;
  }

  static std::string token_text(const Token & t)
  {
    switch (t.kind) {
      case Tok::kIdent: return "'" + t.text + "'";
      case Tok::kString: return "string " + quote_string(t.text);
      case Tok::kInt: return "integer " + std::to_string(t.int_value);
      case Tok::kFloat: return "float " + format_double(t.float_value);
      default: return std::string(describe(t.kind));
    }
  }

  Token expect(Tok k, std::string_view what = {})
  {
    if (!at(k)) {
      const Token & t = peek();
      throw ParseError(
        "unexpected " + token_text(t), t.loc,
        what.empty() ? std::string(describe(k)) : std::string(what));
    }
    return take();
  }

  void expect_word(std::string_view w)
  {
    if (!is_word(w)) {
      const Token & t = peek();
      throw ParseError("unexpected " + token_text(t), t.loc, "'" + std::string(w) + "'");
    }
    take();
  }

  std::string expect_name(std::string_view what)
  {
    const Token & t = peek();
    if (t.kind != Tok::kIdent || is_reserved(t.text)) {
      throw ParseError("unexpected " + token_text(t), t.loc, std::string(what));
    }
    return take().text;
  }

  LevelDecl parse_level()
  {
    expect_word("level");
    LevelDecl decl;
    if (is_word("soft") && peek(1).kind == Tok::kIdent) {
      take();
      decl.soft = true;
    }
    decl.name = expect_name("level name");
    for (;;) {
      if (is_word("enter") || is_word("exit")) {
        bool enter = take().text == "enter";
        expect(Tok::kAssign);
        std::string path = expect(Tok::kString, "procedure path string").text;
        (enter ? decl.enter_proc : decl.exit_proc) = std::move(path);
      } else {
        break;
      }
    }
    expect(Tok::kSemi);
    return decl;
  }

  Rule parse_rule()
  {
    expect_word("rule");
    Rule rule;
    rule.name = expect_name("rule name");
    expect(Tok::kLBrace);
    expect_word("when");
    rule.expr = parse_or();
    expect_word("do");
    rule.chains.push_back(parse_chain());
    while (at(Tok::kSemi)) {
      take();
      if (at(Tok::kRBrace)) {
        break;
      }
      rule.chains.push_back(parse_chain());
    }
    expect(Tok::kRBrace, "'}' or ';'");
    rule.inferred_class = infer_class(rule.expr);
    return rule;
  }

  ActionChain parse_chain()
  {
    ActionChain chain;
    for (;;) {
      ChainStep step;
      step.action = parse_action();
      const Token & t = peek();
      if (t.kind == Tok::kArrow) {
        step.op = ChainOp::kThenIfOk;
      } else if (t.kind == Tok::kNotArrow) {
        step.op = ChainOp::kThenIfFail;
      } else if (t.kind == Tok::kComma) {
        step.op = ChainOp::kSeq;
      } else if (is_word("end")) {
        step.op = ChainOp::kEnd;
      } else {
        throw ParseError("unexpected " + token_text(t), t.loc, "'->', '!->', ',' or 'end'");
      }
      take();
      chain.steps.push_back(std::move(step));
      if (chain.steps.back().op == ChainOp::kEnd) {
        return chain;
      }
    }
  }

  Action parse_action()
  {
    const Token & t = peek();
    if (t.kind != Tok::kIdent) {
      throw ParseError("unexpected " + token_text(t), t.loc, "action");
    }
    std::string kw = t.text;
    SourceLoc loc = t.loc;
    if (kw != "alert" && kw != "set" && kw != "exec" && kw != "trigger") {
      throw ParseError("unknown action '" + kw + "'", loc, "alert, set, exec or trigger");
    }
    take();
    expect(Tok::kLParen);
    Action action;
    if (kw == "alert") {
      action = AlertAction{expect(Tok::kString, "alert message string").text};
    } else if (kw == "set") {
      SetAction a;
      a.variable = expect_name("variable name");
      expect(Tok::kComma);
      a.value = parse_value_sum();
      action = std::move(a);
    } else if (kw == "exec") {
      ExecAction a;
      a.program = parse_word_or_string("program name");
      while (at(Tok::kComma)) {
        take();
        a.args.push_back(parse_exec_arg());
      }
      action = std::move(a);
    } else {
      action = TriggerAction{expect_name("level name")};
    }
    expect(Tok::kRParen);
    return action;
  }

  std::string parse_word_or_string(std::string_view what)
  {
    const Token & t = peek();
    if (t.kind == Tok::kString || t.kind == Tok::kIdent) {
      return take().text;
    }
    throw ParseError("unexpected " + token_text(t), t.loc, std::string(what));
  }

  std::string parse_exec_arg()
  {
    const Token & t = peek();
    switch (t.kind) {
      case Tok::kString:
      case Tok::kIdent:
        return take().text;
      case Tok::kInt:
        return std::to_string(take().int_value);
      case Tok::kFloat:
        return format_double(take().float_value);
      default:
        throw ParseError("unexpected " + token_text(t), t.loc, "argument");
    }
  }

  // Boolean expressions. Both binary operators are right associative.
  ExprPtr parse_or()
  {
    ExprPtr lhs = parse_and();
    if (is_word("or")) {
      take();
      return Expr::make_or(std::move(lhs), parse_or());
    }
    return lhs;
  }

  ExprPtr parse_and()
  {
    ExprPtr lhs = parse_unary();
    if (is_word("and")) {
      take();
      return Expr::make_and(std::move(lhs), parse_and());
    }
    return lhs;
  }

  ExprPtr parse_unary()
  {
    const Token & t = peek();
    if (is_word("not")) {
      take();
      return Expr::make_not(parse_unary());
    }
    if (t.kind == Tok::kLParen) {
      take();
      ExprPtr e = parse_or();
      expect(Tok::kRParen);
      return e;
    }
    if (is_word("true") || is_word("false")) {
      return Expr::make_literal(take().text == "true");
    }
    if (t.kind == Tok::kIdent && !is_reserved(t.text) && peek(1).kind == Tok::kLParen) {
      Token name = take();
      take();
      std::vector<Value> args;
      if (!at(Tok::kRParen)) {
        args.push_back(parse_literal_value());
        while (at(Tok::kComma)) {
          take();
          args.push_back(parse_literal_value());
        }
      }
      expect(Tok::kRParen, "',' or ')'");
      return Expr::make_call(std::move(name.text), std::move(args), name.loc);
    }
    throw ParseError("unexpected " + token_text(t), t.loc, "subexpression");
  }

  std::optional<BasicValue> try_basic_literal()
  {
    const Token & t = peek();
    bool negative = false;
    if (t.kind == Tok::kMinus && (peek(1).kind == Tok::kInt || peek(1).kind == Tok::kFloat)) {
      take();
      negative = true;
    }
    const Token & v = peek();
    switch (v.kind) {
      case Tok::kInt: {
          std::int64_t x = take().int_value;
          return BasicValue{negative ? -x : x};
        }
      case Tok::kFloat: {
          double x = take().float_value;
          return BasicValue{negative ? -x : x};
        }
      case Tok::kString:
        return BasicValue{take().text};
      case Tok::kIdent:
        if (v.text == "true" || v.text == "false") {
          return BasicValue{take().text == "true"};
        }
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  Value parse_literal_value()
  {
    const Token & t = peek();
    if (t.kind == Tok::kLBrace) {
      SourceLoc loc = take().loc;
      std::vector<BasicValue> elems;
      if (!at(Tok::kRBrace)) {
        for (;;) {
          auto v = try_basic_literal();
          if (!v) {
            throw ParseError("unexpected " + token_text(peek()), peek().loc, "set element");
          }
          elems.push_back(std::move(*v));
          if (!at(Tok::kComma)) {
            break;
          }
          take();
        }
      }
      expect(Tok::kRBrace, "',' or '}'");
      try {
        return ValueSet(std::move(elems));
      } catch (const std::invalid_argument &) {
        throw ParseError("set elements must share one type", loc);
      }
    }
    SourceLoc loc = t.loc;
    auto v = try_basic_literal();
    if (!v) {
      throw ParseError("unexpected " + token_text(peek()), loc, "literal");
    }
    return to_value(*v);
  }

  // Arithmetic/string expressions for set(); standard left associativity.
  ValueExprPtr parse_value_sum()
  {
    ValueExprPtr lhs = parse_value_term();
    while (at(Tok::kPlus) || at(Tok::kMinus)) {
      char op = take().kind == Tok::kPlus ? '+' : '-';
      lhs = ValueExpr::make_binary(op, std::move(lhs), parse_value_term());
    }
    return lhs;
  }

  ValueExprPtr parse_value_term()
  {
    ValueExprPtr lhs = parse_value_factor();
    while (at(Tok::kStar) || at(Tok::kSlash)) {
      char op = take().kind == Tok::kStar ? '*' : '/';
      lhs = ValueExpr::make_binary(op, std::move(lhs), parse_value_factor());
    }
    return lhs;
  }

  ValueExprPtr parse_value_factor()
  {
    const Token & t = peek();
    if (t.kind == Tok::kMinus) {
      if (peek(1).kind == Tok::kInt || peek(1).kind == Tok::kFloat) {
        return ValueExpr::make_literal(to_value(*try_basic_literal()));
      }
      take();
      return ValueExpr::make_negate(parse_value_factor());
    }
    if (t.kind == Tok::kLParen) {
      take();
      ValueExprPtr e = parse_value_sum();
      expect(Tok::kRParen);
      return e;
    }
    if (t.kind == Tok::kLBrace || t.kind == Tok::kInt || t.kind == Tok::kFloat ||
      t.kind == Tok::kString || is_word("true") || is_word("false"))
    {
      return ValueExpr::make_literal(parse_literal_value());
    }
    if (t.kind == Tok::kIdent && !is_reserved(t.text)) {
      return ValueExpr::make_variable(take().text);
    }
    throw ParseError("unexpected " + token_text(t), t.loc, "value");
  }

  std::vector<Token> toks_;
  std::size_t pos_{0};
};

}  // namespace

RuleSet parse_ruleset(std::string_view source)
{
  RuleSet rs = Parser(source).parse_file();
  for (const auto & rule : rs.rules) {
    std::vector<const Expr *> stack{rule.expr.get()};
    while (!stack.empty()) {
      const Expr * e = stack.back();
      stack.pop_back();
      if (e->lhs) {
        stack.push_back(e->lhs.get());
      }
      if (e->rhs) {
        stack.push_back(e->rhs.get());
      }
      if (e->kind == Expr::Kind::kCall && e->function == "payload" && e->args.size() == 1) {
        if (const auto * path = std::get_if<std::string>(&e->args[0])) {
          rs.signature_paths.insert(*path);
        }
      }
    }
  }
  return rs;
}

ExprPtr parse_expression(std::string_view source)
{
  return Parser(source).parse_standalone_expression();
}

Value parse_literal(std::string_view source)
{
  return Parser(source).parse_standalone_literal();
}

}  // namespace rips
