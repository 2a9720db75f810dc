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


#include "mcrank/engine.hpp"

#include <gtest/gtest.h>

#include "mcrank/error.hpp"

namespace mcrank {
namespace {

Item fruit(std::string id, std::map<std::string, Scalar> attrs = {}) {
  Item it;
  it.id = id;
  it.text = id;
  it.attributes = std::move(attrs);
  return it;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidInput;
}

const Condition kCharCount = make_condition(31, {}, Priority::Low);

TEST(CharCount, TrimsAndCountsScalars) {
  EXPECT_EQ(char_count("kiwi"), 4u);
  EXPECT_EQ(char_count("  two words \n"), 9u);
  EXPECT_EQ(char_count("café"), 4u);
  EXPECT_EQ(char_count("日本"), 2u);
  EXPECT_EQ(char_count("   "), 0u);
}

TEST(ApplyCondition, CharCountSort) {
  std::vector<Item> items{fruit("banana"), fruit("kiwi"), fruit("apple")};
  EXPECT_EQ(apply_condition({"banana", "kiwi", "apple"}, items, kCharCount),
            (Ordering{"kiwi", "apple", "banana"}));
}

TEST(ApplyCondition, IdentityTemplate) {
  std::vector<Item> items{fruit("a"), fruit("b"), fruit("c")};
  EXPECT_EQ(apply_condition({"a", "b", "c"}, items, make_condition(4, {})), (Ordering{"a", "b", "c"}));
  EXPECT_EQ(apply_condition({"a", "b", "c"}, items, make_condition(5, {})), (Ordering{"a", "b", "c"}));
}

TEST(ApplyCondition, LastFromLeft) {
  std::vector<Item> items{fruit("apple"), fruit("kiwi"), fruit("banana")};
  EXPECT_EQ(apply_condition({"apple", "kiwi", "banana"}, items, make_condition(1, {"apple", ""})),
            (Ordering{"kiwi", "banana", "apple"}));
  EXPECT_EQ(apply_condition({"kiwi", "banana", "apple"}, items, make_condition(2, {"apple", ""})),
            (Ordering{"apple", "kiwi", "banana"}));
}

TEST(ApplyCondition, CurrentFirstAndLast) {
  std::vector<Item> items{fruit("a"), fruit("b"), fruit("c")};
  EXPECT_EQ(apply_condition({"a", "b", "c"}, items, make_condition(3, {})), (Ordering{"b", "c", "a"}));
  EXPECT_EQ(apply_condition({"a", "b", "c"}, items, make_condition(6, {})), (Ordering{"c", "a", "b"}));
}

TEST(ApplyCondition, ExtremalMovesAllTiedItems) {
  std::vector<Item> items{fruit("a", {{"score", make_number(3)}}), fruit("b", {{"score", make_number(9)}}),
                          fruit("c", {{"score", make_number(9)}}), fruit("d", {{"score", make_number(1)}})};
  EXPECT_EQ(apply_condition({"a", "b", "c", "d"}, items, make_condition(35, {"score", ""})),
            (Ordering{"b", "c", "a", "d"}));
  EXPECT_EQ(apply_condition({"a", "b", "c", "d"}, items, make_condition(36, {"score", ""})),
            (Ordering{"a", "b", "c", "d"}));
}

TEST(ApplyCondition, DateComparisonTreatsYearOnlyAsJanuaryFirst) {
  std::vector<Item> items{fruit("a", {{"birthday", *parse_date("1990")}}),
                          fruit("b", {{"birthday", *parse_date("1989-12-31")}}),
                          fruit("c", {{"birthday", *parse_date("1990-01-02")}})};
  EXPECT_EQ(apply_condition({"a", "b", "c"}, items, make_condition(11, {})), (Ordering{"b", "a", "c"}));
  // Born before 1990-01-01 goes to the end.
  EXPECT_EQ(apply_condition({"a", "b", "c"}, items, make_condition(12, {"1990", ""})),
            (Ordering{"a", "c", "b"}));
}

TEST(ApplyCondition, Errors) {
  std::vector<Item> items{fruit("a", {{"size", make_number(1)}}), fruit("b")};
  EXPECT_EQ(code_of([&] { apply_condition({"a", "b"}, items, make_condition(20, {})); }),
            ErrorCode::MissingAttribute);
  std::vector<Item> typed{fruit("a", {{"size", std::string("big")}}), fruit("b", {{"size", make_number(1)}})};
  EXPECT_EQ(code_of([&] { apply_condition({"a", "b"}, typed, make_condition(20, {})); }),
            ErrorCode::TypeMismatch);
  EXPECT_EQ(code_of([&] { apply_condition({"a", "b"}, items, make_condition(1, {"zebra", ""})); }),
            ErrorCode::UnknownItem);
  std::vector<Item> twins{fruit("a"), fruit("b")};
  twins[1].text = "a";
  EXPECT_EQ(code_of([&] { apply_condition({"a", "b"}, twins, make_condition(1, {"a", ""})); }),
            ErrorCode::UnknownItem);
  EXPECT_EQ(code_of([&] { apply_condition({"a", "a"}, items, kCharCount); }), ErrorCode::NotAPermutation);
  EXPECT_EQ(code_of([&] { apply_condition({"a"}, items, kCharCount); }), ErrorCode::NotAPermutation);
  EXPECT_EQ(code_of([&] { apply_condition({"a", "z"}, items, kCharCount); }), ErrorCode::UnknownItem);
}

// Five items with distinct char counts, two of them in Africa.
std::vector<Item> five() {
  auto loc = [](const char* s) { return std::map<std::string, Scalar>{{"location", std::string(s)}}; };
  std::vector<Item> items{fruit("pear", loc("Europe")), fruit("mango", loc("Africa")),
                          fruit("fig", loc("Asia")), fruit("cherry", loc("Africa")),
                          fruit("apricot", loc("Europe"))};
  return items;
}

TEST(GoldRanking, FullSortIgnoresPresentedOrder) {
  auto items = five();
  const std::vector<Condition> conds{make_condition(31, {})};
  const Ordering expected{"fig", "pear", "mango", "cherry", "apricot"};
  EXPECT_EQ(gold_ranking(items, ids_of(items), conds), expected);
  EXPECT_EQ(gold_ranking(items, {"apricot", "cherry", "mango", "pear", "fig"}, conds), expected);
}

TEST(GoldRanking, TwoAndThreeConditions) {
  auto items = five();
  const auto africa = make_condition(7, {"Africa", ""}, Priority::Medium);
  std::vector<Condition> conds{africa, kCharCount};
  const Ordering two{"mango", "cherry", "fig", "pear", "apricot"};
  EXPECT_EQ(gold_ranking(items, ids_of(items), conds), two);

  conds.push_back(make_condition(3, {}, Priority::High));
  const Ordering three{"cherry", "fig", "pear", "apricot", "mango"};
  const auto gold = gold_ranking(items, ids_of(items), conds);
  EXPECT_EQ(gold, three);
  EXPECT_TRUE(satisfies(gold, items, conds.back(), &two));
  EXPECT_EQ(brute_force_gold(items, ids_of(items), conds), gold);
}

TEST(GoldRanking, EqualPrioritiesApplyInSurfaceOrder) {
  auto items = five();
  const auto a = make_condition(1, {"pear", ""}, Priority::Medium);
  const auto b = make_condition(1, {"fig", ""}, Priority::Medium);
  EXPECT_EQ(gold_ranking(items, ids_of(items), std::vector<Condition>{a, b}).back(), "fig");
  EXPECT_EQ(gold_ranking(items, ids_of(items), std::vector<Condition>{b, a}).back(), "pear");
}

TEST(GoldRanking, NeedsConditions) {
  auto items = five();
  EXPECT_EQ(code_of([&] { gold_ranking(items, ids_of(items), {}); }), ErrorCode::InvalidInput);
}

TEST(Satisfies, Examples) {
  std::vector<Item> items{fruit("banana"), fruit("kiwi"), fruit("apple")};
  EXPECT_FALSE(satisfies({"kiwi", "banana", "apple"}, items, kCharCount));
  EXPECT_TRUE(satisfies({"kiwi", "apple", "banana"}, items, kCharCount));
  EXPECT_TRUE(satisfies({"banana", "kiwi", "apple"}, items, make_condition(4, {})));
  EXPECT_EQ(code_of([&] { satisfies({"kiwi", "apple", "banana"}, items, make_condition(3, {})); }),
            ErrorCode::MissingReference);
  const Ordering ref{"apple", "kiwi", "banana"};
  EXPECT_TRUE(satisfies({"kiwi", "banana", "apple"}, items, make_condition(3, {}), &ref));
  EXPECT_FALSE(satisfies({"apple", "kiwi", "banana"}, items, make_condition(3, {}), &ref));
}

TEST(ViolationCount, Measures) {
  std::vector<Item> items{fruit("banana"), fruit("kiwi"), fruit("apple")};
  // Counts 6, 4, 5: two pairs out of order.
  EXPECT_EQ(violation_count({"banana", "kiwi", "apple"}, items, kCharCount), 2u);
  EXPECT_EQ(violation_count({"apple", "kiwi", "banana"}, items, make_condition(1, {"apple", ""})), 2u);
  EXPECT_EQ(violation_count({"kiwi", "apple", "banana"}, items, make_condition(1, {"apple", ""})), 1u);
}

TEST(BruteForce, TooManyItems) {
  std::vector<Item> items;
  for (int i = 0; i < 9; ++i) items.push_back(fruit("x" + std::to_string(i)));
  EXPECT_EQ(code_of([&] { brute_force_gold(items, ids_of(items), std::vector<Condition>{kCharCount}); }),
            ErrorCode::TooManyItems);
}

TEST(InversionDistance, Basics) {
  EXPECT_EQ(inversion_distance({"a", "b", "c"}, {"a", "b", "c"}), 0u);
  EXPECT_EQ(inversion_distance({"a", "b", "c"}, {"c", "b", "a"}), 3u);
  EXPECT_EQ(inversion_distance({"b", "a", "c"}, {"a", "b", "c"}), 1u);
}

TEST(Level, StringRoundTrip) {
  EXPECT_EQ(level_from_string("token"), ItemLevel::Token);
  EXPECT_EQ(level_from_string(to_string(ItemLevel::Paragraph)), ItemLevel::Paragraph);
  EXPECT_FALSE(level_from_string("sentence"));
}

}  // namespace
}  // namespace mcrank
