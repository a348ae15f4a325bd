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

#include "rips/subexpr_catalog.hpp"

#include <algorithm>
#include <array>

namespace rips
{

namespace
{

using enum ArgKind;

const std::vector<SubexprSignature> & catalog()
{
  static const std::vector<SubexprSignature> kCatalog = {
    // message events
    {"topicin", EventClass::kMessage, {kStringSet}},
    {"topicmatches", EventClass::kMessage, {kString}},
    {"publishercount", EventClass::kMessage, {kInteger, kInteger}},
    {"subscribercount", EventClass::kMessage, {kInteger, kInteger}},
    {"publishersinclude", EventClass::kMessage, {kStringSet}},
    {"subscribersinclude", EventClass::kMessage, {kStringSet}},
    {"publishers", EventClass::kMessage, {kStringSet}},
    {"subscribers", EventClass::kMessage, {kStringSet}},
    {"msgtypein", EventClass::kMessage, {kStringSet}},
    {"msgsubtype", EventClass::kMessage, {kString, kString}},
    {"plugin", EventClass::kMessage, {kString}},
    {"payload", EventClass::kMessage, {kString}},
    // graph events
    {"nodes", EventClass::kGraph, {kStringSet}},
    {"nodesinclude", EventClass::kGraph, {kStringSet}},
    {"nodecount", EventClass::kGraph, {kInteger, kInteger}},
    {"topics", EventClass::kGraph, {kStringSet}},
    {"topicsinclude", EventClass::kGraph, {kStringSet}},
    {"topiccount", EventClass::kGraph, {kInteger, kInteger}},
    {"services", EventClass::kGraph, {kString, kStringSet}},
    {"servicesinclude", EventClass::kGraph, {kString, kStringSet}},
    {"servicecount", EventClass::kGraph, {kString, kInteger, kInteger}},
    {"topicsubscribers", EventClass::kGraph, {kString, kStringSet}},
    {"topicsubscribersinclude", EventClass::kGraph, {kString, kStringSet}},
    {"topicsubscribercount", EventClass::kGraph, {kString, kInteger, kInteger}},
    {"topicpublishers", EventClass::kGraph, {kString, kStringSet}},
    {"topicpublishersinclude", EventClass::kGraph, {kString, kStringSet}},
    {"topicpublishercount", EventClass::kGraph, {kString, kInteger, kInteger}},
    // external events
    {"idsalert", EventClass::kExternal, {kString}},
    {"signal", EventClass::kExternal, {kString}},
    // any class
    {"eval", EventClass::kNeutral, {kString, kString, kString}},
  };
  return kCatalog;
}

constexpr std::array<std::string_view, 6> kOperators = {"==", "!=", "<", ">", "<=", ">="};

}  // namespace

std::string_view to_string(ArgKind k)
{
  switch (k) {
    case kString: return "string";
    case kInteger: return "integer";
    case kStringSet: return "set of string";
  }
  return "?";
}

std::span<const SubexprSignature> subexpr_catalog()
{
  return catalog();
}

const SubexprSignature * find_subexpr(std::string_view name)
{
  const auto & c = catalog();
  auto it = std::find_if(c.begin(), c.end(), [&](const auto & s) {return s.name == name;});
  return it == c.end() ? nullptr : &*it;
}

bool is_eval_operator(std::string_view op)
{
  return std::find(kOperators.begin(), kOperators.end(), op) != kOperators.end();
}

bool is_ordering_operator(std::string_view op)
{
  return is_eval_operator(op) && op != "==" && op != "!=";
}

}  // namespace rips
