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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcrank/engine.hpp"

namespace mcrank::llm {

enum class PromptKind {
  RankTokenLevel,
  RankParagraphLevel,
  ExtractConditions,
  SortConditions,
  RankTokenCoT,
  RankParagraphCoT,
};

inline constexpr std::array<PromptKind, 6> kAllPromptKinds{
    PromptKind::RankTokenLevel,    PromptKind::RankParagraphLevel, PromptKind::ExtractConditions,
    PromptKind::SortConditions,    PromptKind::RankTokenCoT,       PromptKind::RankParagraphCoT};

std::string_view to_string(PromptKind kind);
std::optional<PromptKind> prompt_kind_from_string(std::string_view s);

bool is_ranking_kind(PromptKind kind);

/// Level the kind's items must have; nullopt for extract/sort kinds.
std::optional<ItemLevel> required_level(PromptKind kind);

/// Ranking kind for a level, with or without the CoT instruction.
PromptKind ranking_kind(ItemLevel level, bool chain_of_thought);

/// Fills the template for `kind`. `conditions` is the condition string for
/// ranking and extract kinds, and the numbered condition list for
/// SortConditions. Throws LevelMismatch when items do not match the kind.
std::string render_prompt(PromptKind kind, std::string_view conditions,
                          std::span<const Item> items);

/// "1. a\n2. b" with no trailing newline.
std::string numbered_list(std::span<const std::string> lines);

/// Inverse of render_prompt, used by the oracle backend. For SortConditions
/// `conditions` holds the numbered list text. `item_texts` are in prompt
/// order (empty for extract/sort).
struct ParsedPrompt {
  std::string conditions;
  std::vector<std::string> item_texts;
};

/// Throws PromptUnparseable when `text` is not a rendering of `kind`.
ParsedPrompt parse_prompt(PromptKind kind, std::string_view text);

}  // namespace mcrank::llm
