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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcrank/engine.hpp"

namespace mcrank::llm {

/// Maps a free-text token-level answer onto item ids. Fragments are split on
/// newlines, commas and numbered-list markers, normalized (trimmed,
/// lower-cased, surrounding quotes and periods removed), then matched to an
/// item by exact normalized text or, failing that, by a substring relation
/// that holds for exactly one item. Throws NotAPermutation unless every item
/// is matched exactly once.
Ordering parse_token_ranking(std::string_view text, std::span<const Item> items);

/// Collects "Item-<k>" labels (case-insensitive) in reading order; the result
/// must be a permutation of 1..n_items. Labels are 1-based.
std::vector<std::size_t> parse_paragraph_ranking(std::string_view text, std::size_t n_items);

/// Splits a numbered/bulleted list into its entries. Throws EmptyOutput when
/// nothing remains.
std::vector<std::string> parse_condition_list(std::string_view text);

/// Lower-cases and trims, strips enumeration markers, priority tags and
/// surrounding quotes/periods, and collapses runs of whitespace. Used to
/// compare condition surfaces.
std::string normalize_condition_text(std::string_view text);

}  // namespace mcrank::llm
