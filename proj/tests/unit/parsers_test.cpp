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


#include "mcrank/llm/parsers.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "../support/generators.hpp"
#include "mcrank/error.hpp"

namespace mcrank::llm {
namespace {

std::vector<Item> tokens(std::vector<std::string> texts) {
  std::vector<Item> out;
  for (auto& t : texts) {
    Item it;
    it.id = "id-" + t;
    it.text = t;
    out.push_back(std::move(it));
  }
  return out;
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

const std::vector<Item> kFruit = tokens({"apple", "banana", "kiwi"});
const Ordering kExpected{"id-kiwi", "id-apple", "id-banana"};

TEST(TokenRanking, CommaList) { EXPECT_EQ(parse_token_ranking("kiwi, apple, banana", kFruit), kExpected); }

TEST(TokenRanking, NumberedAndCased) {
  EXPECT_EQ(parse_token_ranking("1. Kiwi\n2. Apple\n3. Banana", kFruit), kExpected);
  EXPECT_EQ(parse_token_ranking("\"Kiwi\", 'apple', Banana.", kFruit), kExpected);
  EXPECT_EQ(parse_token_ranking("1. kiwi 2. apple 3. banana", kFruit), kExpected);
}

TEST(TokenRanking, UniqueSubstring) {
  EXPECT_EQ(parse_token_ranking("kiwis, apples, bananas", kFruit), kExpected);
  const auto items = tokens({"red apple", "green apple", "kiwi"});
  EXPECT_EQ(code_of([&] { parse_token_ranking("apple, red apple, kiwi", items); }),
            ErrorCode::NotAPermutation);
}

TEST(TokenRanking, Failures) {
  EXPECT_EQ(code_of([] { parse_token_ranking("kiwi, kiwi, banana", kFruit); }), ErrorCode::NotAPermutation);
  EXPECT_EQ(code_of([] { parse_token_ranking("kiwi, banana", kFruit); }), ErrorCode::NotAPermutation);
  EXPECT_EQ(code_of([] { parse_token_ranking("kiwi, banana, apple, mango", kFruit); }),
            ErrorCode::NotAPermutation);
  EXPECT_EQ(code_of([] { parse_token_ranking("", kFruit); }), ErrorCode::NotAPermutation);
}

TEST(ParagraphRanking, Examples) {
  EXPECT_EQ(parse_paragraph_ranking("Item-2\nItem-1\nItem-3", 3), (std::vector<std::size_t>{2, 1, 3}));
  EXPECT_EQ(parse_paragraph_ranking("item-3, item-1, item-2", 3), (std::vector<std::size_t>{3, 1, 2}));
  EXPECT_EQ(code_of([] { parse_paragraph_ranking("Item-1\nItem-1\nItem-2", 3); }), ErrorCode::NotAPermutation);
  EXPECT_EQ(code_of([] { parse_paragraph_ranking("Item-1\nItem-4\nItem-2", 3); }), ErrorCode::NotAPermutation);
  EXPECT_EQ(code_of([] { parse_paragraph_ranking("Item-0\nItem-1\nItem-2", 3); }), ErrorCode::NotAPermutation);
  EXPECT_EQ(code_of([] { parse_paragraph_ranking("no labels", 3); }), ErrorCode::NotAPermutation);
}

TEST(ConditionList, Examples) {
  EXPECT_EQ(parse_condition_list("1. A\n2. B"), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(parse_condition_list("- A\n\n- B\n"), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(parse_condition_list("1) A\n2) B"), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(code_of([] { parse_condition_list(""); }), ErrorCode::EmptyOutput);
  EXPECT_EQ(code_of([] { parse_condition_list("\n \n"); }), ErrorCode::EmptyOutput);
}

TEST(NormalizeConditionText, StripsDecoration) {
  EXPECT_EQ(normalize_condition_text("2. (High priority): Item \"x\" should  be the last from left."),
            normalize_condition_text("item \"x\" should be the last from left"));
}

// Renders `order` in one of several answer styles a model might use.
std::string render_answer(const std::vector<std::string>& texts, Rng& rng) {
  std::string out;
  const auto style = rng.below(4);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    auto t = texts[i];
    if (rng.coin()) std::transform(t.begin(), t.end(), t.begin(), ::toupper);
    switch (style) {
      case 0: out += (i ? ", " : "") + t; break;
      case 1: out += fmt::format("{}{}. {}", i ? "\n" : "", i + 1, t); break;
      case 2: out += fmt::format("{}\"{}\"", i ? ",\n" : "", t); break;
      default: out += fmt::format("{}- {}", i ? "\n" : "", t); break;
    }
  }
  if (rng.coin()) out += ".";
  return out;
}

TEST(ParserProperty, TokenRoundTrip) {
  Rng rng(41);
  for (int k = 0; k < 2000; ++k) {
    std::set<std::string> unique;
    const auto n = 1 + rng.below(7);
    while (unique.size() < n) unique.insert(testing::random_phrase(rng));
    const auto items = tokens({unique.begin(), unique.end()});
    std::vector<std::size_t> perm(items.size());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<std::string> texts;
    Ordering expected;
    for (auto i : perm) {
      texts.push_back(items[i].text);
      expected.push_back(items[i].id);
    }
    const auto answer = render_answer(texts, rng);
    // Answers can legitimately be ambiguous when one text contains another.
    try {
      EXPECT_EQ(parse_token_ranking(answer, items), expected) << answer;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotAPermutation);
      bool nested = false;
      for (const auto& a : unique) {
        for (const auto& b : unique) nested |= a != b && b.find(a) != std::string::npos;
      }
      EXPECT_TRUE(nested) << answer;
    }
  }
}

TEST(ParserProperty, ParagraphRoundTrip) {
  Rng rng(42);
  for (int k = 0; k < 2000; ++k) {
    const auto n = 1 + rng.below(7);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    rng.shuffle(perm);
    std::string answer;
    for (auto i : perm) answer += fmt::format("{}{}-{}\n", rng.coin() ? "Item" : "item", "", i);
    EXPECT_EQ(parse_paragraph_ranking(answer, n), perm);
  }
}

// Parsers either return a full permutation or throw a typed error.
TEST(ParserProperty, TotalOnNoise) {
  Rng rng(43);
  const auto items = tokens({"alpha", "beta", "gamma", "delta"});
  const std::vector<std::string> vocab{"alpha", "beta", "gamma", "delta", "Item-1", "Item-2",
                                       "Item-3", "Item-4", ",",    "\n",    "1.",     "foo"};
  for (int k = 0; k < 3000; ++k) {
    std::string text;
    for (std::uint64_t i = 0, n = rng.below(10); i < n; ++i) text += vocab[rng.below(vocab.size())] + " ";
    try {
      auto order = parse_token_ranking(text, items);
      auto sorted = order;
      std::sort(sorted.begin(), sorted.end());
      auto ids = ids_of(items);
      std::sort(ids.begin(), ids.end());
      EXPECT_EQ(sorted, ids);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotAPermutation);
    }
    try {
      auto labels = parse_paragraph_ranking(text, 4);
      std::sort(labels.begin(), labels.end());
      EXPECT_EQ(labels, (std::vector<std::size_t>{1, 2, 3, 4}));
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotAPermutation);
    }
  }
}

}  // namespace
}  // namespace mcrank::llm
