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

#include "rips/evaluator.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rips/event_codec.hpp"
#include "rips/process.hpp"
#include "rips/subexpr_catalog.hpp"

namespace rips
{

ProcessPluginRunner::ProcessPluginRunner(
  std::filesystem::path directory, std::chrono::milliseconds timeout)
: directory_(std::move(directory)), timeout_(timeout)
{
}

PluginVerdict ProcessPluginRunner::run(const std::string & id, const MessageEvent & ev)
{
  if (id.empty() || id.find('/') != std::string::npos || id == "." || id == "..") {
    return {false, "plugin id '" + id + "' is not a plain name"};
  }
  auto path = directory_ / id;
  if (!std::filesystem::is_regular_file(path)) {
    return {false, "plugin '" + id + "' not found in " + directory_.string()};
  }
  ProcessSpec spec;
  spec.program = path.string();
  Event wrapped{ev, 0};
  spec.stdin_data = encode_event_line(wrapped) + "\n";
  spec.timeout = timeout_;
  auto result = run_process(spec);
  switch (result.status) {
    case ProcessResult::Status::kTimedOut:
      return {false, "plugin '" + id + "' timed out"};
    case ProcessResult::Status::kSpawnFailed:
      return {false, "plugin '" + id + "' could not be started: " + result.error};
    default:
      return {result.ok(), {}};
  }
}

void SignatureRegistry::load(const std::filesystem::path & base, const std::set<std::string> & paths)
{
  for (const auto & key : paths) {
    std::filesystem::path p(key);
    if (p.is_relative()) {
      p = base / p;
    }
    std::ifstream in(p);
    if (!in) {
      throw std::runtime_error("cannot read signature file " + p.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      sets_[key] = std::make_shared<const SignatureSet>(compile_signatures(ss.str()));
    } catch (const SignatureError & e) {
      throw std::runtime_error(p.string() + ":" + e.what());
    }
  }
}

void SignatureRegistry::add(const std::string & key, std::shared_ptr<const SignatureSet> set)
{
  sets_[key] = std::move(set);
}

const SignatureSet * SignatureRegistry::find(const std::string & key) const
{
  auto it = sets_.find(key);
  return it == sets_.end() ? nullptr : it->second.get();
}

namespace
{

NameSet to_names(const Value & v)
{
  NameSet out;
  for (const auto & e : std::get<ValueSet>(v).elements()) {
    out.insert(std::get<std::string>(e));
  }
  return out;
}

bool includes(const NameSet & super, const NameSet & sub)
{
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool in_interval(std::size_t n, const Value & lo, const Value & hi)
{
  auto count = static_cast<std::int64_t>(n);
  return std::get<std::int64_t>(lo) <= count && count <= std::get<std::int64_t>(hi);
}

const std::string & str(const Value & v)
{
  return std::get<std::string>(v);
}

void warn(const EvalContext & ctx, std::string msg)
{
  if (ctx.warnings) {
    ctx.warnings->push_back(std::move(msg));
  }
}

// Shared shape of the nodes/topics/services/... families: exact set,
// "current entities are included in the argument", and closed interval.
enum class Family { kExact, kInclude, kCount };

bool family_test(Family f, const NameSet & current, const Expr & call, std::size_t first_arg)
{
  switch (f) {
    case Family::kExact: return current == to_names(call.args[first_arg]);
    case Family::kInclude: return includes(to_names(call.args[first_arg]), current);
    case Family::kCount:
      return in_interval(current.size(), call.args[first_arg], call.args[first_arg + 1]);
  }
  return false;
}

enum class Entity { kNodes, kTopics, kServices, kTopicSubscribers, kTopicPublishers };

struct GraphFunction
{
  std::string_view name;
  Entity entity;
  Family family;
};

constexpr GraphFunction kGraphFunctions[] = {
  {"nodes", Entity::kNodes, Family::kExact},
  {"nodesinclude", Entity::kNodes, Family::kInclude},
  {"nodecount", Entity::kNodes, Family::kCount},
  {"topics", Entity::kTopics, Family::kExact},
  {"topicsinclude", Entity::kTopics, Family::kInclude},
  {"topiccount", Entity::kTopics, Family::kCount},
  {"services", Entity::kServices, Family::kExact},
  {"servicesinclude", Entity::kServices, Family::kInclude},
  {"servicecount", Entity::kServices, Family::kCount},
  {"topicsubscribers", Entity::kTopicSubscribers, Family::kExact},
  {"topicsubscribersinclude", Entity::kTopicSubscribers, Family::kInclude},
  {"topicsubscribercount", Entity::kTopicSubscribers, Family::kCount},
  {"topicpublishers", Entity::kTopicPublishers, Family::kExact},
  {"topicpublishersinclude", Entity::kTopicPublishers, Family::kInclude},
  {"topicpublishercount", Entity::kTopicPublishers, Family::kCount},
};

}  // namespace

const std::regex & Evaluator::regex_for(const std::string & source)
{
  auto it = regex_cache_.find(source);
  if (it == regex_cache_.end()) {
    it = regex_cache_.emplace(source, std::regex(source, std::regex::ECMAScript)).first;
  }
  return it->second;
}

bool Evaluator::eval_variable(const Expr & call, const EvalContext & ctx)
{
  const auto & var = str(call.args[0]);
  const auto & op = str(call.args[1]);
  switch (compare_variable(ctx.vars, var, op, str(call.args[2]))) {
    case CompareStatus::kTrue: return true;
    case CompareStatus::kFalse: return false;
    case CompareStatus::kMissingVariable:
      warn(ctx, "eval: undefined variable '" + var + "'");
      return false;
    case CompareStatus::kIncomparable:
      warn(ctx, "eval: cannot compare '" + var + "' " + op + " \"" + str(call.args[2]) + "\"");
      return false;
    case CompareStatus::kBadOperator:
      warn(ctx, "eval: unknown operator '" + op + "'");
      return false;
  }
  return false;
}

bool Evaluator::eval_msg_subexpr(const Expr & call, const MessageEvent & ev, const EvalContext & ctx)
{
  const auto & fn = call.function;
  const auto & a = call.args;
  if (fn == "topicin") {return to_names(a[0]).count(ev.topic) > 0;}
  if (fn == "topicmatches") {
    try {
      return std::regex_search(ev.topic, regex_for(str(a[0])));
    } catch (const std::regex_error & e) {
      warn(ctx, "topicmatches: " + std::string(e.what()));
      return false;
    }
  }
  if (fn == "publishercount") {return in_interval(ev.topic_publishers.size(), a[0], a[1]);}
  if (fn == "subscribercount") {return in_interval(ev.topic_subscribers.size(), a[0], a[1]);}
  if (fn == "publishersinclude") {return includes(ev.topic_publishers, to_names(a[0]));}
  if (fn == "subscribersinclude") {return includes(ev.topic_subscribers, to_names(a[0]));}
  if (fn == "publishers") {return ev.topic_publishers == to_names(a[0]);}
  if (fn == "subscribers") {return ev.topic_subscribers == to_names(a[0]);}
  if (fn == "msgtypein") {return to_names(a[0]).count(ev.msg_type) > 0;}
  if (fn == "msgsubtype") {return ev.msg_type == str(a[0]) && ev.msg_subtype == str(a[1]);}
  if (fn == "plugin") {
    if (!ctx.plugins) {
      warn(ctx, "plugin '" + str(a[0]) + "': no plugin runner configured");
      return false;
    }
    auto verdict = ctx.plugins->run(str(a[0]), ev);
    if (!verdict.warning.empty()) {
      warn(ctx, verdict.warning);
      return false;
    }
    return verdict.flagged;
  }
  if (fn == "payload") {
    const SignatureSet * set = ctx.signatures ? ctx.signatures->find(str(a[0])) : nullptr;
    if (!set) {
      warn(ctx, "payload: signature file '" + str(a[0]) + "' not loaded");
      return false;
    }
    return set->matches_any(ev.payload);
  }
  if (fn == "eval") {return eval_variable(call, ctx);}
  throw std::logic_error("not a message subexpression: " + fn);
}

bool Evaluator::eval_graph_subexpr(const Expr & call, const GraphEvent & ev, const EvalContext & ctx)
{
  if (call.function == "eval") {
    return eval_variable(call, ctx);
  }
  const auto * fn = std::find_if(
    std::begin(kGraphFunctions), std::end(kGraphFunctions),
    [&](const auto & g) {return g.name == call.function;});
  if (fn == std::end(kGraphFunctions)) {
    throw std::logic_error("not a graph subexpression: " + call.function);
  }
  const auto & snap = ev.snapshot;
  switch (fn->entity) {
    case Entity::kNodes:
      return family_test(fn->family, snap.nodes, call, 0);
    case Entity::kTopics: {
        NameSet names;
        for (const auto & [name, info] : snap.topics) {
          names.insert(name);
        }
        return family_test(fn->family, names, call, 0);
      }
    case Entity::kServices: {
        // Scoped to one node; an absent node never satisfies the test.
        const auto & node = str(call.args[0]);
        if (!snap.nodes.count(node)) {
          return false;
        }
        auto it = snap.services.find(node);
        return family_test(fn->family, it == snap.services.end() ? NameSet{} : it->second, call, 1);
      }
    case Entity::kTopicSubscribers:
    case Entity::kTopicPublishers: {
        // Scoped to one topic; an absent topic never satisfies the test.
        auto it = snap.topics.find(str(call.args[0]));
        if (it == snap.topics.end()) {
          return false;
        }
        const auto & current = fn->entity == Entity::kTopicSubscribers ?
          it->second.subscribers : it->second.publishers;
        return family_test(fn->family, current, call, 1);
      }
  }
  return false;
}

bool Evaluator::eval_external_subexpr(const Expr & call, const ExternalEvent & ev)
{
  if (call.function == "idsalert") {
    const auto * alert = std::get_if<IdsAlert>(&ev.kind);
    return alert && alert->alert_id == str(call.args[0]);
  }
  if (call.function == "signal") {
    const auto * sig = std::get_if<ControlSignal>(&ev.kind);
    return sig && sig->sig == str(call.args[0]);
  }
  throw std::logic_error("not an external subexpression: " + call.function);
}

bool Evaluator::eval_call(const Expr & call, const Event & ev, const EvalContext & ctx)
{
  const auto * sig = find_subexpr(call.function);
  if (!sig) {
    throw std::logic_error("unknown subexpression " + call.function);
  }
  if (sig->event_class == EventClass::kNeutral) {
    return eval_variable(call, ctx);
  }
  if (sig->event_class != ev.event_class()) {
    throw std::logic_error(
      call.function + " is a " + std::string(to_string(sig->event_class)) +
      " subexpression evaluated against a " + std::string(to_string(ev.event_class())) + " event");
  }
  switch (sig->event_class) {
    case EventClass::kMessage:
      return eval_msg_subexpr(call, std::get<MessageEvent>(ev.kind), ctx);
    case EventClass::kGraph:
      return eval_graph_subexpr(call, std::get<GraphEvent>(ev.kind), ctx);
    default:
      return eval_external_subexpr(call, std::get<ExternalEvent>(ev.kind));
  }
}

bool Evaluator::eval_expression(const Expr & expr, const Event & ev, const EvalContext & ctx)
{
  switch (expr.kind) {
    case Expr::Kind::kAnd:
      return eval_expression(*expr.lhs, ev, ctx) && eval_expression(*expr.rhs, ev, ctx);
    case Expr::Kind::kOr:
      return eval_expression(*expr.lhs, ev, ctx) || eval_expression(*expr.rhs, ev, ctx);
    case Expr::Kind::kNot:
      return !eval_expression(*expr.lhs, ev, ctx);
    case Expr::Kind::kLiteral:
      return expr.literal;
    case Expr::Kind::kCall:
      return eval_call(expr, ev, ctx);
  }
  return false;
}

}  // namespace rips
