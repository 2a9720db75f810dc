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

#include <gtest/gtest.h>

#include "mcrank/rng.hpp"

namespace mcrank {
namespace {

TEST(ParseDate, IsoAndYearOnly) {
  auto d = parse_date("2024-02-29");
  ASSERT_TRUE(d);
  EXPECT_EQ(d->year, 2024);
  EXPECT_EQ(d->month, 2);
  EXPECT_EQ(d->day, 29);
  EXPECT_FALSE(d->year_only);

  auto y = parse_date("1987");
  ASSERT_TRUE(y);
  EXPECT_TRUE(y->year_only);
  EXPECT_EQ(y->ordinal(), 19870101);
  EXPECT_EQ(to_text(*y), "1987");
}

TEST(ParseDate, RejectsImpossibleDates) {
  EXPECT_FALSE(parse_date("2023-02-29"));
  EXPECT_FALSE(parse_date("1900-02-29"));
  EXPECT_TRUE(parse_date("2000-02-29"));
  EXPECT_FALSE(parse_date("2021-13-01"));
  EXPECT_FALSE(parse_date("2021-04-31"));
  EXPECT_FALSE(parse_date("2021-4-1"));
  EXPECT_FALSE(parse_date("87"));
  EXPECT_FALSE(parse_date(""));
  EXPECT_FALSE(parse_date("abcd"));
}

TEST(ParseNumber, UnitsAndSigns) {
  auto n = parse_number("12 cm");
  ASSERT_TRUE(n);
  EXPECT_DOUBLE_EQ(n->value, 12.0);
  EXPECT_EQ(n->text, "12 cm");

  auto neg = parse_number("-3.25");
  ASSERT_TRUE(neg);
  EXPECT_DOUBLE_EQ(neg->value, -3.25);

  EXPECT_FALSE(parse_number(""));
  EXPECT_FALSE(parse_number("cm"));
  EXPECT_FALSE(parse_number("1.2.3"));
  EXPECT_FALSE(parse_number("12 cm3"));
}

TEST(ParseNumber, KeepsVerbatimSpelling) {
  auto n = parse_number("5.0");
  ASSERT_TRUE(n);
  EXPECT_EQ(to_text(Scalar{*n}), "5.0");
}

TEST(Scalar, KindOf) {
  EXPECT_EQ(kind_of(Scalar{std::string("x")}), ScalarKind::String);
  EXPECT_EQ(kind_of(Scalar{make_number(1.5)}), ScalarKind::Number);
  EXPECT_EQ(kind_of(Scalar{Date{2000, 1, 2, false}}), ScalarKind::Date);
}

// Date ordinals must order like (year, month, day) tuples.
TEST(ScalarProperty, DateOrdinalMatchesLexicographicOrder) {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    Date a{1800 + static_cast<int>(rng.below(300)), 1 + static_cast<int>(rng.below(12)),
           1 + static_cast<int>(rng.below(28)), false};
    Date b{1800 + static_cast<int>(rng.below(300)), 1 + static_cast<int>(rng.below(12)),
           1 + static_cast<int>(rng.below(28)), false};
    const bool lt = std::tie(a.year, a.month, a.day) < std::tie(b.year, b.month, b.day);
    EXPECT_EQ(a.ordinal() < b.ordinal(), lt);
  }
}

TEST(ScalarProperty, DateTextRoundTrip) {
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    Date d{1000 + static_cast<int>(rng.below(9000)), 1 + static_cast<int>(rng.below(12)),
           1 + static_cast<int>(rng.below(28)), false};
    auto back = parse_date(to_text(d));
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, d);
  }
}

TEST(ScalarProperty, MakeNumberRoundTrips) {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const double v = (static_cast<double>(rng.below(2000000)) - 1000000.0) / 1000.0;
    const auto n = make_number(v);
    auto back = parse_number(n.text);
    ASSERT_TRUE(back) << n.text;
    EXPECT_DOUBLE_EQ(back->value, v);
  }
}

}  // namespace
}  // namespace mcrank
