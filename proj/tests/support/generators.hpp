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

// Seeded random generators for rule sets, expressions and events.

#ifndef RIPS_TESTS__GENERATORS_HPP_
#define RIPS_TESTS__GENERATORS_HPP_

#include <cstdint>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rips/events.hpp"
#include "rips/rule_ast.hpp"
#include "rips/signatures.hpp"

namespace gen
{

inline const std::vector<std::string> kNodes = {"cam", "nav", "base", "lidar", "ctl", "rogue"};
inline const std::vector<std::string> kTopics =
{"/cmd_vel", "/image_raw", "/scan", "/odom", "/tf", "/map"};
inline const std::vector<std::string> kServices = {"reset", "set_mode", "get_map"};
inline const std::vector<std::string> kTypes =
{"geometry_msgs/Twist", "sensor_msgs/Image", "std_msgs/String"};
inline const std::vector<std::string> kSubtypes = {"", "raw", "compressed"};
inline const std::vector<std::string> kRegexes = {"^/cmd", "vel$", "image", "^/[a-z]+$", "s"};
inline const std::vector<std::string> kPlugins = {"blind", "flood"};
inline const std::vector<std::string> kOps = {"==", "!=", "<", ">", "<=", ">="};

class Gen
{
public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  int uniform(int lo, int hi)
  {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) {return std::bernoulli_distribution(p)(rng_);}

  template<typename T>
  const T & pick(const std::vector<T> & xs)
  {
    return xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))];
  }

  std::set<std::string> subset(const std::vector<std::string> & xs, double p = 0.5)
  {
    std::set<std::string> out;
    for (const auto & x : xs) {
      if (coin(p)) {
        out.insert(x);
      }
    }
    return out;
  }

  rips::Value string_set(const std::vector<std::string> & pool, double p = 0.5)
  {
    std::vector<rips::BasicValue> xs;
    for (const auto & x : subset(pool, p)) {
      xs.emplace_back(x);
    }
    return rips::Value{rips::ValueSet(std::move(xs))};
  }

  std::pair<rips::Value, rips::Value> interval()
  {
    int lo = uniform(0, 4);
    return {rips::Value{std::int64_t{lo}}, rips::Value{std::int64_t{lo + uniform(0, 3)}}};
  }

  rips::ExprPtr message_call()
  {
    static const std::vector<std::string> fns = {
      "topicin", "topicmatches", "publishercount", "subscribercount", "publishersinclude",
      "subscribersinclude", "publishers", "subscribers", "msgtypein", "msgsubtype", "plugin",
      "payload"};
    const auto & f = pick(fns);
    std::vector<rips::Value> args;
    if (f == "topicin") {
      args.push_back(string_set(kTopics));
    } else if (f == "topicmatches") {
      args.emplace_back(pick(kRegexes));
    } else if (f == "publishercount" || f == "subscribercount") {
      auto [lo, hi] = interval();
      args = {lo, hi};
    } else if (f == "msgtypein") {
      args.push_back(string_set(kTypes));
    } else if (f == "msgsubtype") {
      args = {rips::Value{pick(kTypes)}, rips::Value{pick(kSubtypes)}};
    } else if (f == "plugin") {
      args.emplace_back(pick(kPlugins));
    } else if (f == "payload") {
      args.emplace_back(std::string("sigs.yar"));
    } else {
      args.push_back(string_set(kNodes));
    }
    return rips::Expr::make_call(f, std::move(args));
  }

  rips::ExprPtr graph_call()
  {
    static const std::vector<std::string> fns = {
      "nodes", "nodesinclude", "nodecount", "topics", "topicsinclude", "topiccount",
      "services", "servicesinclude", "servicecount", "topicsubscribers",
      "topicsubscribersinclude", "topicsubscribercount", "topicpublishers",
      "topicpublishersinclude", "topicpublishercount"};
    const auto & f = pick(fns);
    std::vector<rips::Value> args;
    bool counting = f.size() > 5 && f.compare(f.size() - 5, 5, "count") == 0;
    if (f.rfind("service", 0) == 0) {
      args.emplace_back(pick(kNodes));
    } else if (f.rfind("topicsub", 0) == 0 || f.rfind("topicpub", 0) == 0) {
      args.emplace_back(pick(kTopics));
    }
    if (counting) {
      auto [lo, hi] = interval();
      args.push_back(lo);
      args.push_back(hi);
    } else if (f.rfind("service", 0) == 0) {
      args.push_back(string_set(kServices));
    } else if (f == "topics" || f == "topicsinclude") {
      args.push_back(string_set(kTopics));
    } else {
      args.push_back(string_set(kNodes, 0.6));
    }
    return rips::Expr::make_call(f, std::move(args));
  }

  rips::ExprPtr external_call()
  {
    if (coin()) {
      return rips::Expr::make_call("idsalert", {rips::Value{pick(std::vector<std::string>{
            "intrusion", "scan", "brute"})}});
    }
    return rips::Expr::make_call("signal", {rips::Value{std::string(coin() ? "USR1" : "USR2")}});
  }

  rips::ExprPtr eval_call()
  {
    switch (uniform(0, 2)) {
      case 0:
        return rips::Expr::make_call("eval", {rips::Value{std::string("Time")},
            rips::Value{pick(kOps)}, rips::Value{std::to_string(uniform(0, 20))}});
      case 1:
        return rips::Expr::make_call("eval", {rips::Value{std::string("Level")},
            rips::Value{std::string(coin() ? "==" : "!=")},
            rips::Value{std::string(coin() ? "DEFAULT" : "ALERT")}});
      default:
        return rips::Expr::make_call("eval", {rips::Value{std::string("ghost")},
            rips::Value{std::string("==")}, rips::Value{std::string("1")}});
    }
  }

  /// Random expression over one event class. External expressions contain a
  /// single external call, as the validator requires.
  rips::ExprPtr expr(rips::EventClass cls, int depth)
  {
    bool external_used = false;
    return expr_rec(cls, depth, external_used);
  }

  rips::MessageEvent message_event()
  {
    rips::MessageEvent m;
    m.topic = pick(kTopics);
    m.msg_type = pick(kTypes);
    m.msg_subtype = pick(kSubtypes);
    m.topic_publishers = subset(kNodes, 0.4);
    m.topic_subscribers = subset(kNodes, 0.4);
    m.publisher = m.topic_publishers.empty() ? "" : *m.topic_publishers.begin();
    static const std::string alphabet = "abcRMrm -/\x7f\x45";
    int n = uniform(0, 24);
    for (int i = 0; i < n; ++i) {
      m.payload.push_back(static_cast<std::uint8_t>(alphabet[static_cast<std::size_t>(
          uniform(0, static_cast<int>(alphabet.size()) - 1))]));
    }
    return m;
  }

  rips::GraphSnapshot snapshot()
  {
    rips::GraphSnapshot g;
    g.nodes = subset(kNodes, 0.7);
    std::vector<std::string> present(g.nodes.begin(), g.nodes.end());
    for (const auto & t : subset(kTopics, 0.6)) {
      rips::TopicInfo info;
      info.publishers = subset(present, 0.4);
      info.subscribers = subset(present, 0.4);
      info.msg_type = pick(kTypes);
      g.topics[t] = info;
    }
    for (const auto & n : present) {
      if (coin(0.6)) {
        g.services[n] = subset(kServices, 0.5);
      }
    }
    return g;
  }

  rips::Event event(rips::EventClass cls, std::int64_t tick)
  {
    rips::Event ev;
    ev.timestamp = tick;
    if (cls == rips::EventClass::kMessage) {
      ev.kind = message_event();
    } else if (cls == rips::EventClass::kGraph) {
      rips::GraphEvent g;
      g.change = rips::GraphChange::kEndpointChanged;
      g.snapshot = snapshot();
      ev.kind = g;
    } else {
      rips::ExternalEvent x;
      if (coin()) {
        x.kind = rips::IdsAlert{pick(std::vector<std::string>{"intrusion", "scan", "brute"})};
      } else {
        x.kind = rips::ControlSignal{coin() ? "USR1" : "USR2"};
      }
      ev.kind = x;
    }
    return ev;
  }

  std::mt19937 & engine() {return rng_;}

private:
  rips::ExprPtr expr_rec(rips::EventClass cls, int depth, bool & external_used)
  {
    int choice = depth <= 0 ? 3 : uniform(0, 5);
    switch (choice) {
      case 0:
        return rips::Expr::make_and(expr_rec(cls, depth - 1, external_used),
                 expr_rec(cls, depth - 1, external_used));
      case 1:
        return rips::Expr::make_or(expr_rec(cls, depth - 1, external_used),
                 expr_rec(cls, depth - 1, external_used));
      case 2:
        return rips::Expr::make_not(expr_rec(cls, depth - 1, external_used));
      default:
        break;
    }
    int leaf = uniform(0, 9);
    if (leaf == 0) {
      return rips::Expr::make_literal(coin());
    }
    if (leaf == 1) {
      return eval_call();
    }
    switch (cls) {
      case rips::EventClass::kMessage:
        return message_call();
      case rips::EventClass::kGraph:
        return graph_call();
      case rips::EventClass::kExternal:
        if (external_used) {
          return eval_call();
        }
        external_used = true;
        return external_call();
      case rips::EventClass::kNeutral:
        break;
    }
    return eval_call();
  }

  std::mt19937 rng_;
};


/// Random signature definitions together with their source text. Tests
/// compare the compiled source against the definitions themselves.
struct GeneratedSignatures
{
  std::vector<rips::Signature> signatures;
  std::string source;
};

inline GeneratedSignatures random_signatures(Gen & g)
{
  static const std::string text_alphabet = "abcRMrm -/";
  static const std::string byte_alphabet = "abcRMrm -/\x7f\x45";
  static const std::vector<std::string> regexes =
  {"r[a-m]", "^a", "b$", "m+c", "[A-Z]{2}", "a.b", "-.?r", "(ab|ba)"};
  GeneratedSignatures out;
  std::ostringstream src;
  int n = g.uniform(1, 3);
  for (int s = 0; s < n; ++s) {
    rips::Signature sig;
    sig.name = "sig" + std::to_string(s);
    src << "rule " << sig.name << " {\n  strings:\n";
    int np = g.uniform(1, 3);
    for (int i = 0; i < np; ++i) {
      rips::Pattern p;
      p.name = "$p" + std::to_string(i);
      src << "    " << p.name << " = ";
      switch (g.uniform(0, 2)) {
        case 0: {
            p.kind = rips::Pattern::Kind::kText;
            int len = g.uniform(1, 3);
            for (int k = 0; k < len; ++k) {
              p.text.push_back(text_alphabet[static_cast<std::size_t>(
                  g.uniform(0, static_cast<int>(text_alphabet.size()) - 1))]);
            }
            p.case_sensitive = g.coin(0.6);
            src << '"' << p.text << '"' << (p.case_sensitive ? "" : " nocase");
            break;
          }
        case 1: {
            p.kind = rips::Pattern::Kind::kHex;
            int len = g.uniform(1, 3);
            src << "{";
            for (int k = 0; k < len; ++k) {
              rips::HexToken t;
              // Wildcards are not allowed at either end of a hex string.
              if (k > 0 && k < len - 1 && g.coin(0.3)) {
                t.wildcard = true;
                src << " ??";
              } else {
                t.value = static_cast<std::uint8_t>(byte_alphabet[static_cast<std::size_t>(
                    g.uniform(0, static_cast<int>(byte_alphabet.size()) - 1))]);
                char buf[4];
                std::snprintf(buf, sizeof(buf), "%02X", t.value);
                src << ' ' << buf;
              }
              p.hex.push_back(t);
            }
            src << " }";
            break;
          }
        default:
          p.kind = rips::Pattern::Kind::kRegex;
          p.text = g.pick(regexes);
          p.case_sensitive = g.coin(0.6);
          src << '/' << p.text << '/' << (p.case_sensitive ? "" : "i");
          break;
      }
      src << "\n";
      sig.patterns.push_back(p);
    }
    src << "  condition:\n    ";
    switch (g.uniform(0, 2)) {
      case 0:
        sig.condition.kind = rips::MatchCondition::Kind::kAny;
        src << "any of them";
        break;
      case 1:
        sig.condition.kind = rips::MatchCondition::Kind::kAll;
        src << "all of them";
        break;
      default:
        sig.condition.kind = rips::MatchCondition::Kind::kAtLeast;
        sig.condition.k = static_cast<std::size_t>(g.uniform(1, np));
        src << sig.condition.k << " of them";
        break;
    }
    src << "\n}\n";
    out.signatures.push_back(sig);
  }
  out.source = src.str();
  return out;
}

inline std::vector<std::uint8_t> random_payload(Gen & g, int max_len = 24)
{
  static const std::string alphabet = "abcRMrm -/\x7f\x45";
  std::vector<std::uint8_t> out;
  int n = g.uniform(0, max_len);
  for (int i = 0; i < n; ++i) {
    out.push_back(static_cast<std::uint8_t>(alphabet[static_cast<std::size_t>(
        g.uniform(0, static_cast<int>(alphabet.size()) - 1))]));
  }
  return out;
}

/// Event class of the first non-neutral call, visiting left operands first.
inline rips::EventClass first_call_class(const rips::ExprPtr & e)
{
  using K = rips::Expr::Kind;
  if (!e) {
    return rips::EventClass::kNeutral;
  }
  if (e->kind == K::kCall) {
    static const std::set<std::string> message = {
      "topicin", "topicmatches", "publishercount", "subscribercount", "publishersinclude",
      "subscribersinclude", "publishers", "subscribers", "msgtypein", "msgsubtype", "plugin",
      "payload"};
    if (message.count(e->function)) {
      return rips::EventClass::kMessage;
    }
    if (e->function == "idsalert" || e->function == "signal") {
      return rips::EventClass::kExternal;
    }
    if (e->function == "eval") {
      return rips::EventClass::kNeutral;
    }
    return rips::EventClass::kGraph;
  }
  auto l = first_call_class(e->lhs);
  return l != rips::EventClass::kNeutral ? l : first_call_class(e->rhs);
}

inline void collect_payload_paths(const rips::ExprPtr & e, std::set<std::string> & out)
{
  if (!e) {
    return;
  }
  if (e->kind == rips::Expr::Kind::kCall && e->function == "payload") {
    out.insert(std::get<std::string>(e->args[0]));
  }
  collect_payload_paths(e->lhs, out);
  collect_payload_paths(e->rhs, out);
}

inline rips::ValueExprPtr random_value_expr(Gen & g, int depth)
{
  int choice = depth <= 0 ? g.uniform(0, 1) : g.uniform(0, 4);
  switch (choice) {
    case 0:
      switch (g.uniform(0, 4)) {
        case 0: return rips::ValueExpr::make_literal(rips::Value{std::int64_t{g.uniform(-50, 50)}});
        case 1: return rips::ValueExpr::make_literal(rips::Value{g.uniform(-40, 40) / 4.0});
        case 2: return rips::ValueExpr::make_literal(rips::Value{std::string(
                g.pick(std::vector<std::string>{"", "-seen", "a\"b", "back\\slash", "tab\there"}))});
        case 3: return rips::ValueExpr::make_literal(rips::Value{g.coin()});
        default: {
            std::vector<rips::BasicValue> xs;
            int n = g.uniform(0, 3);
            for (int i = 0; i < n; ++i) {
              xs.emplace_back(std::int64_t{g.uniform(-3, 9)});
            }
            return rips::ValueExpr::make_literal(rips::Value{rips::ValueSet(std::move(xs))});
          }
      }
    case 1:
      return rips::ValueExpr::make_variable(
        g.pick(std::vector<std::string>{"Level", "Time", "Uptime", "hits", "note"}));
    case 2:
      return rips::ValueExpr::make_negate(random_value_expr(g, depth - 1));
    default:
      return rips::ValueExpr::make_binary(
        g.pick(std::vector<char>{'+', '-', '*', '/'}),
        random_value_expr(g, depth - 1), random_value_expr(g, depth - 1));
  }
}

/// Random, syntactically valid rule set. The parser's derived fields
/// (inferred_class, signature_paths) are computed here independently.
inline rips::RuleSet random_ruleset(Gen & g)
{
  static const std::vector<std::string> level_names =
  {"DEFAULT", "ALERT", "COMPROMISED", "HALT", "WATCH", "LOCKDOWN"};
  rips::RuleSet rs;
  int nl = g.uniform(1, 5);
  for (int i = 0; i < nl; ++i) {
    rips::LevelDecl d;
    d.name = level_names[static_cast<std::size_t>(i)];
    d.soft = g.coin(0.3);
    if (g.coin(0.3)) {
      d.enter_proc = "procedures/enter_" + std::to_string(i) + ".sh";
    }
    if (g.coin(0.3)) {
      d.exit_proc = "procedures/exit " + std::to_string(i) + ".sh";
    }
    rs.levels.push_back(d);
  }
  int nr = g.uniform(0, 4);
  for (int r = 0; r < nr; ++r) {
    rips::Rule rule;
    rule.name = "rule_" + std::to_string(r);
    auto cls = g.pick(std::vector<rips::EventClass>{
        rips::EventClass::kMessage, rips::EventClass::kGraph, rips::EventClass::kExternal});
    rule.expr = g.expr(cls, g.uniform(0, 3));
    int nc = g.uniform(1, 3);
    for (int c = 0; c < nc; ++c) {
      rips::ActionChain chain;
      int ns = g.uniform(1, 3);
      for (int s = 0; s < ns; ++s) {
        rips::ChainStep step;
        switch (g.uniform(0, 3)) {
          case 0:
            step.action = rips::AlertAction{g.pick(std::vector<std::string>{
                "info: hit", "quote \" inside", "new\nline", "", "ütf-8 ✓"})};
            break;
          case 1:
            step.action = rips::SetAction{
              g.pick(std::vector<std::string>{"hits", "note", "x"}), random_value_expr(g, 2)};
            break;
          case 2: {
              rips::ExecAction ex;
              ex.program = g.pick(std::vector<std::string>{"firewall_block", "usb_alarm"});
              int na = g.uniform(0, 2);
              for (int a = 0; a < na; ++a) {
                ex.args.push_back(g.pick(std::vector<std::string>{"/cmd_vel", "a b", "--x=\"1\""}));
              }
              step.action = ex;
              break;
            }
          default:
            step.action = rips::TriggerAction{g.pick(rs.levels).name};
            break;
        }
        step.op = s + 1 == ns ? rips::ChainOp::kEnd :
          g.pick(std::vector<rips::ChainOp>{
            rips::ChainOp::kThenIfOk, rips::ChainOp::kThenIfFail, rips::ChainOp::kSeq});
        chain.steps.push_back(step);
      }
      rule.chains.push_back(chain);
    }
    rule.inferred_class = first_call_class(rule.expr);
    collect_payload_paths(rule.expr, rs.signature_paths);
    rs.rules.push_back(rule);
  }
  return rs;
}

}  // namespace gen

#endif  // RIPS_TESTS__GENERATORS_HPP_
