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

#include "mcrank/scalar.hpp"

#include <cctype>
#include <charconv>

#include <fmt/format.h>

namespace mcrank {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

}  // namespace

ScalarKind kind_of(const Scalar& s) {
  switch (s.index()) {
    case 0: return ScalarKind::String;
    case 1: return ScalarKind::Number;
    default: return ScalarKind::Date;
  }
}

std::string_view to_string(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::String: return "string";
    case ScalarKind::Number: return "number";
    case ScalarKind::Date: return "date";
  }
  return "?";
}

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() == 4 && all_digits(text)) {
    return Date{to_int(text), 1, 1, true};
  }
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
  if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
  Date out{to_int(y), to_int(m), to_int(d), false};
  if (out.month < 1 || out.month > 12) return std::nullopt;
  if (out.day < 1 || out.day > days_in_month(out.year, out.month)) return std::nullopt;
  return out;
}

std::optional<Number> parse_number(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  const std::size_t int_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == int_start) return std::nullopt;
  if (i < text.size() && text[i] == '.') {
    const std::size_t frac_start = ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == frac_start) return std::nullopt;
  }
  const std::size_t literal_end = i;
  while (i < text.size() && text[i] == ' ') ++i;
  const std::size_t unit_start = i;
  while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) return std::nullopt;
  if (unit_start == text.size() && literal_end != text.size()) return std::nullopt;  // trailing blanks

  double value = 0.0;
  const char* first = text.data() + (text[0] == '+' ? 1 : 0);
  auto [ptr, ec] = std::from_chars(first, text.data() + literal_end, value);
  if (ec != std::errc() || ptr != text.data() + literal_end) return std::nullopt;
  return Number{value, std::string(text)};
}

Number make_number(double value) { return Number{value, fmt::format("{}", value)}; }

std::string to_text(const Date& d) {
  if (d.year_only) return fmt::format("{:04d}", d.year);
  return fmt::format("{:04d}-{:02d}-{:02d}", d.year, d.month, d.day);
}

std::string to_text(const Scalar& s) {
  if (const auto* str = std::get_if<std::string>(&s)) return *str;
  if (const auto* num = std::get_if<Number>(&s)) return num->text;
  return to_text(std::get<Date>(s));
}

}  // namespace mcrank
