// Copyright 2026 The mcrank Authors
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

namespace mcrank {

/// Calendar date. Year-only values ("1987") order as January 1st of that year
/// but keep their original spelling for rendering.
struct Date {
  int year = 0;
  int month = 1;
  int day = 1;
  bool year_only = false;

  /// Sortable key yyyymmdd.
  long ordinal() const { return static_cast<long>(year) * 10000 + month * 100 + day; }

  friend bool operator==(const Date&, const Date&) = default;
};

/// Decimal literal with an optional unit suffix. `text` is the verbatim
/// spelling ("5.0", "12 cm"); comparisons use `value` only.
struct Number {
  double value = 0.0;
  std::string text;

  friend bool operator==(const Number&, const Number&) = default;
};

using Scalar = std::variant<std::string, Number, Date>;

enum class ScalarKind { String, Number, Date };

ScalarKind kind_of(const Scalar& s);
std::string_view to_string(ScalarKind kind);

/// Accepts YYYY-MM-DD (validated against the calendar) and YYYY.
std::optional<Date> parse_date(std::string_view text);

/// Accepts [+-]digits[.digits] optionally followed by whitespace and an
/// alphabetic unit suffix.
std::optional<Number> parse_number(std::string_view text);

/// Number from a plain double; text is the shortest round-trip spelling.
Number make_number(double value);

std::string to_text(const Date& d);
std::string to_text(const Scalar& s);

}  // namespace mcrank
