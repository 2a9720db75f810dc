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

#include <fmt/format.h>

#include "mcrank/error.hpp"

namespace mcrank::llm {

namespace {

constexpr std::string_view kRankHead = "Given following conditions: \"";
constexpr std::string_view kTokenMiddle = "\", sort the list of items ";
constexpr std::string_view kTokenTail = " from left to right. Do not provide any explanation.";
constexpr std::string_view kParagraphMiddle =
    "\", sort the items from left to right. Do not provide any explanation and only provide a "
    "permutation of Item-1, ..., Item-";
constexpr std::string_view kParagraphTail = " enter separated as the output.";
constexpr std::string_view kChainOfThought =
    "To sort the items, first extract the conditions, then sort the conditions based on their "
    "priority. Finally, apply the sorted conditions on the list of items iteratively updating "
    "their order in each iteration. Only report the final sorted list of items.";
constexpr std::string_view kExtractHead =
    "Given the conditions, extract the conditions into numbered items separated by enter. Do not "
    "provide any explanation and do not modify the conditions.\nConditions: ";
constexpr std::string_view kSortHead =
    "Given the conditions, sort these conditions in the order that they should be applied to a "
    "list of items sequentially based on their priority to satisfy all their requirements as "
    "much as possible from the lowest priority to the highest priority. Do not provide any "
    "explanation and do not modify the conditions.\nConditions:\n";

[[noreturn]] void unparseable(PromptKind kind, std::string_view why) {
  throw Error(ErrorCode::PromptUnparseable,
              fmt::format("{} prompt: {}", to_string(kind), why));
}

std::string token_item_list(std::span<const Item> items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + items[i].text + "\"";
  }
  return out;
}

std::string paragraph_item_lines(std::span<const Item> items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += fmt::format("\nItem-{}: {}", i + 1, items[i].text);
  }
  return out;
}

std::vector<std::string> split_quoted(PromptKind kind, std::string_view list) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < list.size()) {
    if (list[i] != '"') unparseable(kind, "item list is not quoted");
    const auto close = list.find('"', i + 1);
    if (close == std::string_view::npos) unparseable(kind, "unterminated item");
    out.emplace_back(list.substr(i + 1, close - i - 1));
    i = close + 1;
    if (i == list.size()) break;
    if (list.compare(i, 2, ", ") != 0) unparseable(kind, "items not comma separated");
    i += 2;
  }
  if (out.empty()) unparseable(kind, "no items");
  return out;
}

}  // namespace

std::string_view to_string(PromptKind kind) {
  switch (kind) {
    case PromptKind::RankTokenLevel: return "rank_token";
    case PromptKind::RankParagraphLevel: return "rank_paragraph";
    case PromptKind::ExtractConditions: return "extract_conditions";
    case PromptKind::SortConditions: return "sort_conditions";
    case PromptKind::RankTokenCoT: return "rank_token_cot";
    case PromptKind::RankParagraphCoT: return "rank_paragraph_cot";
  }
  return "?";
}

std::optional<PromptKind> prompt_kind_from_string(std::string_view s) {
  for (auto k : kAllPromptKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

bool is_ranking_kind(PromptKind kind) { return required_level(kind).has_value(); }

std::optional<ItemLevel> required_level(PromptKind kind) {
  switch (kind) {
    case PromptKind::RankTokenLevel:
    case PromptKind::RankTokenCoT: return ItemLevel::Token;
    case PromptKind::RankParagraphLevel:
    case PromptKind::RankParagraphCoT: return ItemLevel::Paragraph;
    default: return std::nullopt;
  }
}

PromptKind ranking_kind(ItemLevel level, bool chain_of_thought) {
  if (level == ItemLevel::Token) {
    return chain_of_thought ? PromptKind::RankTokenCoT : PromptKind::RankTokenLevel;
  }
  return chain_of_thought ? PromptKind::RankParagraphCoT : PromptKind::RankParagraphLevel;
}

std::string numbered_list(std::span<const std::string> lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += "\n";
    out += fmt::format("{}. {}", i + 1, lines[i]);
  }
  return out;
}

std::string render_prompt(PromptKind kind, std::string_view conditions,
                          std::span<const Item> items) {
  if (auto level = required_level(kind)) {
    if (conditions.empty()) throw Error(ErrorCode::InvalidInput, "empty condition string");
    for (const auto& item : items) {
      if (item.level != *level) {
        throw Error(ErrorCode::LevelMismatch,
                    fmt::format("{} prompt given {} item {}", to_string(kind),
                                to_string(item.level), item.id));
      }
    }
  }
  const std::string cond(conditions);
  switch (kind) {
    case PromptKind::RankTokenLevel:
    case PromptKind::RankTokenCoT: {
      auto out = std::string(kRankHead) + cond + std::string(kTokenMiddle) +
                 token_item_list(items) + std::string(kTokenTail);
      if (kind == PromptKind::RankTokenCoT) out += "\n" + std::string(kChainOfThought);
      return out;
    }
    case PromptKind::RankParagraphLevel:
    case PromptKind::RankParagraphCoT: {
      auto out = std::string(kRankHead) + cond + std::string(kParagraphMiddle) +
                 std::to_string(items.size()) + std::string(kParagraphTail);
      if (kind == PromptKind::RankParagraphCoT) out += "\n" + std::string(kChainOfThought);
      return out + paragraph_item_lines(items);
    }
    case PromptKind::ExtractConditions:
      return std::string(kExtractHead) + cond;
    case PromptKind::SortConditions:
      return std::string(kSortHead) + cond;
  }
  return {};
}

ParsedPrompt parse_prompt(PromptKind kind, std::string_view text) {
  ParsedPrompt out;
  auto expect_prefix = [&](std::string_view prefix) {
    if (text.substr(0, prefix.size()) != prefix) unparseable(kind, "unexpected preamble");
    return text.substr(prefix.size());
  };
  switch (kind) {
    case PromptKind::ExtractConditions:
      out.conditions = std::string(expect_prefix(kExtractHead));
      return out;
    case PromptKind::SortConditions:
      out.conditions = std::string(expect_prefix(kSortHead));
      return out;
    case PromptKind::RankTokenLevel:
    case PromptKind::RankTokenCoT: {
      auto rest = expect_prefix(kRankHead);
      const auto mid = rest.find(kTokenMiddle);
      if (mid == std::string_view::npos) unparseable(kind, "missing item list");
      out.conditions = std::string(rest.substr(0, mid));
      rest.remove_prefix(mid + kTokenMiddle.size());
      if (kind == PromptKind::RankTokenCoT) {
        const auto cot = "\n" + std::string(kChainOfThought);
        if (rest.size() < cot.size() || rest.substr(rest.size() - cot.size()) != cot) {
          unparseable(kind, "missing chain-of-thought instruction");
        }
        rest.remove_suffix(cot.size());
      }
      if (rest.size() < kTokenTail.size() || rest.substr(rest.size() - kTokenTail.size()) != kTokenTail) {
        unparseable(kind, "missing closing instruction");
      }
      rest.remove_suffix(kTokenTail.size());
      out.item_texts = split_quoted(kind, rest);
      return out;
    }
    case PromptKind::RankParagraphLevel:
    case PromptKind::RankParagraphCoT: {
      auto rest = expect_prefix(kRankHead);
      const auto mid = rest.find(kParagraphMiddle);
      if (mid == std::string_view::npos) unparseable(kind, "missing instruction");
      out.conditions = std::string(rest.substr(0, mid));
      rest.remove_prefix(mid + kParagraphMiddle.size());
      const auto tail = rest.find(kParagraphTail);
      if (tail == std::string_view::npos) unparseable(kind, "missing output format");
      rest.remove_prefix(tail + kParagraphTail.size());
      if (kind == PromptKind::RankParagraphCoT) {
        const auto cot = "\n" + std::string(kChainOfThought);
        if (rest.substr(0, cot.size()) != cot) unparseable(kind, "missing chain-of-thought instruction");
        rest.remove_prefix(cot.size());
      }
      std::size_t label = 1;
      while (!rest.empty()) {
        const auto head = fmt::format("\nItem-{}: ", label);
        if (rest.substr(0, head.size()) != head) unparseable(kind, "bad item line");
        rest.remove_prefix(head.size());
        const auto end = rest.find('\n');
        out.item_texts.emplace_back(rest.substr(0, end));
        rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
        ++label;
      }
      if (out.item_texts.empty()) unparseable(kind, "no items");
      return out;
    }
  }
  unparseable(kind, "unknown kind");
}

}  // namespace mcrank::llm
