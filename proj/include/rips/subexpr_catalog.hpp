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

#ifndef RIPS__SUBEXPR_CATALOG_HPP_
#define RIPS__SUBEXPR_CATALOG_HPP_

#include <span>
#include <string_view>
#include <vector>

#include "rips/rule_ast.hpp"

namespace rips
{

enum class ArgKind { kString, kInteger, kStringSet };

std::string_view to_string(ArgKind k);

struct SubexprSignature
{
  std::string_view name;
  EventClass event_class;
  std::vector<ArgKind> args;
};

/// Every subexpression function known to the engine, grouped by the event
/// class it inspects. eval() is the only class-neutral function.
std::span<const SubexprSignature> subexpr_catalog();

const SubexprSignature * find_subexpr(std::string_view name);

/// Comparison operators accepted by eval().
bool is_eval_operator(std::string_view op);
bool is_ordering_operator(std::string_view op);

}  // namespace rips

#endif  // RIPS__SUBEXPR_CATALOG_HPP_
