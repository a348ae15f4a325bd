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

#ifndef RIPS__VALUE_HPP_
#define RIPS__VALUE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rips
{

/// Scalar values usable as set elements.
using BasicValue = std::variant<std::int64_t, double, std::string, bool>;

/// A homogeneous set of basic values. Elements are kept sorted and unique so
/// that structural equality is set equality.
class ValueSet
{
public:
  ValueSet() = default;

  /// Throws std::invalid_argument when the elements do not share one type.
  explicit ValueSet(std::vector<BasicValue> elements);

  const std::vector<BasicValue> & elements() const {return elements_;}
  std::size_t size() const {return elements_.size();}
  bool empty() const {return elements_.empty();}
  bool contains(const BasicValue & v) const;

  /// True when every element of `other` is in this set.
  bool includes(const ValueSet & other) const;

  friend bool operator==(const ValueSet &, const ValueSet &) = default;

private:
  std::vector<BasicValue> elements_;
};

/// The rule language's value domain: integer, float, string, boolean, or a
/// set of one basic type.
using Value = std::variant<std::int64_t, double, std::string, bool, ValueSet>;

enum class ValueType { kInteger, kFloat, kString, kBoolean, kSet };

ValueType type_of(const Value & v);
ValueType type_of(const BasicValue & v);
std::string_view type_name(ValueType t);

/// Renders a value in rule-language literal syntax (strings quoted and
/// escaped, floats always carrying a '.' or exponent).
std::string to_literal(const Value & v);
std::string to_literal(const BasicValue & v);

/// Human-oriented rendering: strings unquoted, sets as literals.
std::string to_display(const Value & v);

/// Shortest decimal text that re-parses to the same double, always
/// recognisable as a float literal.
std::string format_double(double d);

std::string quote_string(std::string_view s);

Value to_value(const BasicValue & v);
std::optional<BasicValue> to_basic(const Value & v);

}  // namespace rips

#endif  // RIPS__VALUE_HPP_
