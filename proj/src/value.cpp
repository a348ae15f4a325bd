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

#include "rips/value.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace rips
{

ValueSet::ValueSet(std::vector<BasicValue> elements)
: elements_(std::move(elements))
{
  for (const auto & e : elements_) {
    if (e.index() != elements_.front().index()) {
      throw std::invalid_argument("set elements must share one type");
    }
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool ValueSet::contains(const BasicValue & v) const
{
  return std::binary_search(elements_.begin(), elements_.end(), v);
}

bool ValueSet::includes(const ValueSet & other) const
{
  return std::includes(
    elements_.begin(), elements_.end(),
    other.elements_.begin(), other.elements_.end());
}

ValueType type_of(const Value & v)
{
  return static_cast<ValueType>(v.index());
}

ValueType type_of(const BasicValue & v)
{
  return static_cast<ValueType>(v.index());
}

std::string_view type_name(ValueType t)
{
  switch (t) {
    case ValueType::kInteger: return "integer";
    case ValueType::kFloat: return "float";
    case ValueType::kString: return "string";
    case ValueType::kBoolean: return "boolean";
    case ValueType::kSet: return "set";
  }
  return "?";
}

std::string format_double(double d)
{
  if (std::isnan(d)) {
    return "0.0";
  }
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d);
  std::string s(buf.data(), end);
  if (s.find_first_of(".eEn") == std::string::npos) {
    s += ".0";
  }
  return s;
}

std::string quote_string(std::string_view s)
{
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string to_literal(const BasicValue & v)
{
  return std::visit(
    [](const auto & x) -> std::string {
      using T = std::decay_t<decltype(x)>;
      if constexpr (std::is_same_v<T, std::int64_t>) {
        return std::to_string(x);
      } else if constexpr (std::is_same_v<T, double>) {
        return format_double(x);
      } else if constexpr (std::is_same_v<T, std::string>) {
        return quote_string(x);
      } else {
        return x ? "true" : "false";
      }
    }, v);
}

std::string to_literal(const Value & v)
{
  if (const auto * set = std::get_if<ValueSet>(&v)) {
    std::string out = "{";
    bool first = true;
    for (const auto & e : set->elements()) {
      if (!first) {
        out += ", ";
      }
      first = false;
      out += to_literal(e);
    }
    return out + "}";
  }
  return to_literal(*to_basic(v));
}

std::string to_display(const Value & v)
{
  if (const auto * s = std::get_if<std::string>(&v)) {
    return *s;
  }
  return to_literal(v);
}

Value to_value(const BasicValue & v)
{
  return std::visit([](const auto & x) -> Value {return x;}, v);
}

std::optional<BasicValue> to_basic(const Value & v)
{
  return std::visit(
    [](const auto & x) -> std::optional<BasicValue> {
      using T = std::decay_t<decltype(x)>;
      if constexpr (std::is_same_v<T, ValueSet>) {
        return std::nullopt;
      } else {
        return BasicValue{x};
      }
    }, v);
}

}  // namespace rips
