// Copyright 2026 The Constellation OLAP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace constellation {

// Distinguished coarsest parameter and its single value.
inline constexpr std::string_view kAllParam = "all";
inline constexpr std::string_view kAllValue = "All";

// A literal in a predicate or a Switch position: a decimal number or a string.
using Literal = std::variant<double, std::string>;

inline bool IsNumber(const Literal& lit) { return std::holds_alternative<double>(lit); }

// Shortest text that reads back to the same double; integral values print
// without a fractional part ("2000", not "2000.0").
std::string FormatNumber(double value);

// Parses a complete decimal number (leading/trailing garbage rejected).
std::optional<double> ParseNumber(std::string_view text);

// Text used to match a literal against a dimension value.
std::string LiteralText(const Literal& lit);

// Source form: numbers bare, strings double-quoted with \" and \\ escaped.
std::string QuoteLiteral(const Literal& lit);

bool IsIdentifier(std::string_view text);

// "sale" -> "Sale".
std::string Capitalize(std::string_view text);

}  // namespace constellation
