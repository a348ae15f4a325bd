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

#ifndef RIPS__EVALUATOR_HPP_
#define RIPS__EVALUATOR_HPP_

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <regex>
#include <string>
#include <vector>

#include "rips/events.hpp"
#include "rips/rule_ast.hpp"
#include "rips/signatures.hpp"
#include "rips/variables.hpp"

namespace rips
{

struct PluginVerdict
{
  bool flagged{false};
  std::string warning;  // non-empty when the plugin could not give an answer
};

/// Runs message-inspection plugins for plugin(id).
class PluginRunner
{
public:
  virtual ~PluginRunner() = default;
  virtual PluginVerdict run(const std::string & id, const MessageEvent & ev) = 0;
};

/// Plugins are executables named `id` inside a directory. The message is
/// written to the plugin's stdin as one JSON event line; exit status 0 means
/// the plugin flagged the message.
class ProcessPluginRunner : public PluginRunner
{
public:
  explicit ProcessPluginRunner(
    std::filesystem::path directory,
    std::chrono::milliseconds timeout = std::chrono::milliseconds(500));

  PluginVerdict run(const std::string & id, const MessageEvent & ev) override;

private:
  std::filesystem::path directory_;
  std::chrono::milliseconds timeout_;
};

/// Compiled signature files keyed by the path written in payload(path).
class SignatureRegistry
{
public:
  /// Loads every path, resolving relative ones against `base`. Throws
  /// std::runtime_error naming the file on I/O or compile errors.
  void load(const std::filesystem::path & base, const std::set<std::string> & paths);

  void add(const std::string & key, std::shared_ptr<const SignatureSet> set);
  const SignatureSet * find(const std::string & key) const;

private:
  std::map<std::string, std::shared_ptr<const SignatureSet>> sets_;
};

struct EvalContext
{
  const VariableStore & vars;
  PluginRunner * plugins{nullptr};
  const SignatureRegistry * signatures{nullptr};
  std::vector<std::string> * warnings{nullptr};
};

/// Tree-walking, short-circuit evaluator for rule expressions. Holds only a
/// regex cache, so evaluation has no observable side effects besides plugin
/// invocations and warnings.
class Evaluator
{
public:
  bool eval_expression(const Expr & expr, const Event & ev, const EvalContext & ctx);

  bool eval_msg_subexpr(const Expr & call, const MessageEvent & ev, const EvalContext & ctx);
  bool eval_graph_subexpr(const Expr & call, const GraphEvent & ev, const EvalContext & ctx);
  bool eval_external_subexpr(const Expr & call, const ExternalEvent & ev);

  /// eval(var, op, value); class-neutral.
  static bool eval_variable(const Expr & call, const EvalContext & ctx);

private:
  bool eval_call(const Expr & call, const Event & ev, const EvalContext & ctx);
  const std::regex & regex_for(const std::string & source);

  std::map<std::string, std::regex> regex_cache_;
};

}  // namespace rips

#endif  // RIPS__EVALUATOR_HPP_
