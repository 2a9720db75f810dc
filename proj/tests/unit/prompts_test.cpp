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


#include "mcrank/llm/prompts.hpp"

#include <gtest/gtest.h>

#include "../support/generators.hpp"
#include "mcrank/error.hpp"

namespace mcrank::llm {
namespace {

Item make_item(std::string text, ItemLevel level) {
  Item it;
  it.id = text;
  it.text = std::move(text);
  it.level = level;
  return it;
}

std::vector<Item> tokens(std::initializer_list<const char*> texts) {
  std::vector<Item> out;
  for (auto t : texts) out.push_back(make_item(t, ItemLevel::Token));
  return out;
}

TEST(RenderPrompt, TokenLevel) {
  const auto items = tokens({"apple", "banana", "kiwi"});
  const auto text = render_prompt(PromptKind::RankTokenLevel,
                                  "Sort the items based on their character count from the smallest to largest",
                                  items);
  EXPECT_EQ(text,
            "Given following conditions: \"Sort the items based on their character count from the "
            "smallest to largest\", sort the list of items \"apple\", \"banana\", \"kiwi\" from left to "
            "right. Do not provide any explanation.");
}

TEST(RenderPrompt, ParagraphLevel) {
  std::vector<Item> items;
  for (int i = 1; i <= 5; ++i) items.push_back(make_item("review " + std::to_string(i), ItemLevel::Paragraph));
  const auto text = render_prompt(PromptKind::RankParagraphLevel, "C", items);
  EXPECT_EQ(text,
            "Given following conditions: \"C\", sort the items from left to right. Do not provide any "
            "explanation and only provide a permutation of Item-1, ..., Item-5 enter separated as the "
            "output.\nItem-1: review 1\nItem-2: review 2\nItem-3: review 3\nItem-4: review 4\n"
            "Item-5: review 5");
}

TEST(RenderPrompt, ExtractEmbedsConditions) {
  const std::string conds = "(low priority): A; (medium priority): B; (high priority): C";
  const auto text = render_prompt(PromptKind::ExtractConditions, conds, {});
  EXPECT_TRUE(text.starts_with("Given the conditions, extract the conditions into numbered items"));
  EXPECT_TRUE(text.ends_with("\nConditions: " + conds));
}

TEST(RenderPrompt, SortListsConditions) {
  const std::vector<std::string> lines{"A", "B"};
  EXPECT_EQ(numbered_list(lines), "1. A\n2. B");
  const auto text = render_prompt(PromptKind::SortConditions, numbered_list(lines), {});
  EXPECT_NE(text.find("from the lowest priority to the highest priority"), std::string::npos);
  EXPECT_TRUE(text.ends_with("Conditions:\n1. A\n2. B"));
}

TEST(RenderPrompt, CoTAddsInstruction) {
  const auto items = tokens({"a", "b"});
  const auto plain = render_prompt(PromptKind::RankTokenLevel, "C", items);
  const auto cot = render_prompt(PromptKind::RankTokenCoT, "C", items);
  EXPECT_TRUE(cot.starts_with(plain + "\n"));
  EXPECT_NE(cot.find("first extract the conditions"), std::string::npos);
}

TEST(RenderPrompt, LevelMismatch) {
  const auto items = tokens({"a", "b"});
  try {
    render_prompt(PromptKind::RankParagraphLevel, "C", items);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LevelMismatch);
  }
}

TEST(PromptKinds, StringsAndLevels) {
  for (auto k : kAllPromptKinds) EXPECT_EQ(prompt_kind_from_string(to_string(k)), k);
  EXPECT_FALSE(prompt_kind_from_string("rank"));
  EXPECT_EQ(ranking_kind(ItemLevel::Token, true), PromptKind::RankTokenCoT);
  EXPECT_EQ(ranking_kind(ItemLevel::Paragraph, false), PromptKind::RankParagraphLevel);
  EXPECT_FALSE(is_ranking_kind(PromptKind::SortConditions));
  EXPECT_EQ(required_level(PromptKind::RankParagraphCoT), ItemLevel::Paragraph);
}

TEST(ParsePrompt, RejectsForeignText) {
  for (auto k : kAllPromptKinds) {
    try {
      parse_prompt(k, "Please rank these.");
      FAIL() << to_string(k);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::PromptUnparseable);
    }
  }
}

// Every kind parses back to the condition text and item texts it was
// rendered from, for generated conditions and item texts.
TEST(PromptProperty, RenderParseRoundTrip) {
  Rng rng(31);
  for (int k = 0; k < 500; ++k) {
    std::vector<Condition> conds;
    for (std::uint64_t i = 0, n = 1 + rng.below(3); i < n; ++i) {
      const int id = 1 + static_cast<int>(rng.below(kTemplateCount));
      conds.push_back(make_condition(id, testing::random_slots(id, rng), testing::random_priority(rng)));
    }
    const auto cond_string = render_condition_string(conds);
    for (auto kind : kAllPromptKinds) {
      std::vector<Item> items;
      std::string conditions = cond_string;
      if (auto level = required_level(kind)) {
        for (std::uint64_t i = 0, n = 1 + rng.below(7); i < n; ++i) {
          auto text = *level == ItemLevel::Token ? testing::random_phrase(rng)
                                                 : testing::random_phrase(rng) + ". " + testing::random_phrase(rng);
          items.push_back(make_item(text, *level));
        }
      } else if (kind == PromptKind::SortConditions) {
        std::vector<std::string> lines;
        for (const auto& c : conds) lines.push_back(render_condition(c, true));
        conditions = numbered_list(lines);
      }
      const auto parsed = parse_prompt(kind, render_prompt(kind, conditions, items));
      EXPECT_EQ(parsed.conditions, conditions) << to_string(kind);
      std::vector<std::string> texts;
      for (const auto& it : items) texts.push_back(it.text);
      EXPECT_EQ(parsed.item_texts, texts) << to_string(kind);
    }
  }
}

}  // namespace
}  // namespace mcrank::llm
